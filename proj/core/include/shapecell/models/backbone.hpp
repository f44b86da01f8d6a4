#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shapecell/errors.hpp"
#include "shapecell/nn/ops.hpp"
#include "shapecell/nn/tensor.hpp"
#include "shapecell/util/rng.hpp"

namespace shapecell::models {

enum class BackboneKind { conv_small, conv_large };

inline std::vector<std::int64_t> backbone_widths(BackboneKind kind) {
    switch (kind) {
        case BackboneKind::conv_small: return {8, 16, 32, 64};
        case BackboneKind::conv_large: return {16, 32, 64, 128};
    }
    throw InvalidInputError("unknown backbone kind");
}

inline BackboneKind backbone_kind_from_string(const std::string& s) {
    if (s == "conv_small") return BackboneKind::conv_small;
    if (s == "conv_large") return BackboneKind::conv_large;
    throw ConfigError("unknown backbone kind '" + s + "' (expected conv_small or conv_large)");
}

// Stack of conv3x3(pad 1) + ReLU + maxpool2 stages followed by concatenated
// global average and max pooling, so the feature dimension is twice the last
// stage width. Average pooling summarizes region statistics while max
// pooling keeps localized contour responses (small protrusions would
// otherwise vanish into the spatial mean). Inputs in [0,1] are shifted by
// -0.5 before the first convolution.
template <typename T>
class BackboneT {
public:
    BackboneT() = default;

    BackboneT(std::string name, std::int64_t in_channels, std::vector<std::int64_t> widths)
        : name_(std::move(name)), in_channels_(in_channels), widths_(std::move(widths)) {
        if (widths_.empty()) throw InvalidInputError("backbone needs at least one stage");
        if (2 * widths_.back() < 8)
            throw InvalidInputError("backbone feature dim must be >= 8, got " +
                                    std::to_string(2 * widths_.back()));
        std::int64_t c = in_channels_;
        for (auto w : widths_) {
            stages_.push_back({nn::TensorT<T>(nn::Shape{w, c, 3, 3}),
                               nn::TensorT<T>(nn::Shape{w})});
            c = w;
        }
    }

    std::int64_t feature_dim() const { return 2 * widths_.back(); }
    std::int64_t in_channels() const { return in_channels_; }

    void init(Rng& rng) {
        for (auto& st : stages_) {
            kaiming_init(st.w, st.w.dim(1) * 9, rng);
            std::fill(st.b.values().begin(), st.b.values().end(), T(0));
            st.w.set_requires_grad(true);
            st.b.set_requires_grad(true);
        }
    }

    nn::TensorT<T> forward(nn::TensorT<T> x) const {
        if (x.rank() != 4 || x.dim(1) != in_channels_)
            throw InvalidInputError(name_ + ": expected [N," + std::to_string(in_channels_) +
                                    ",H,W] input, got " + nn::shape_to_string(x.shape()));
        x = nn::add_scalar(x, T(-0.5));
        for (const auto& st : stages_) {
            x = nn::conv2d(x, st.w, st.b, 1, 1);
            x = nn::relu(x);
            x = nn::maxpool2d(x, 2, 2);
        }
        return nn::concat_cols<T>({nn::global_avg_pool(x), nn::global_max_pool(x)});
    }

    void collect_params(std::vector<std::pair<std::string, nn::TensorT<T>>>& out) const {
        for (std::size_t i = 0; i < stages_.size(); ++i) {
            out.emplace_back(name_ + ".stage" + std::to_string(i) + ".w", stages_[i].w);
            out.emplace_back(name_ + ".stage" + std::to_string(i) + ".b", stages_[i].b);
        }
    }

    static void kaiming_init(nn::TensorT<T>& w, std::int64_t fan_in, Rng& rng) {
        const double std = std::sqrt(2.0 / static_cast<double>(fan_in));
        for (auto& v : w.values()) v = static_cast<T>(rng.normal(0.0, std));
    }

private:
    struct Stage {
        nn::TensorT<T> w, b;
    };
    std::string name_;
    std::int64_t in_channels_ = 0;
    std::vector<std::int64_t> widths_;
    std::vector<Stage> stages_;
};

}  // namespace shapecell::models
