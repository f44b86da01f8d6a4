#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "shapecell/models/attention.hpp"
#include "shapecell/models/backbone.hpp"
#include "shapecell/nn/ops.hpp"
#include "shapecell/nn/tensor.hpp"
#include "shapecell/util/rng.hpp"

namespace shapecell::models {

enum class ModelMode { dual, rgb_only };

inline ModelMode model_mode_from_string(const std::string& s) {
    if (s == "dual") return ModelMode::dual;
    if (s == "rgb_only") return ModelMode::rgb_only;
    throw ConfigError("unknown model mode '" + s + "' (expected dual or rgb_only)");
}

inline std::string to_string(ModelMode m) {
    return m == ModelMode::dual ? "dual" : "rgb_only";
}

struct ModelConfig {
    ModelMode mode = ModelMode::dual;
    std::int64_t class_count = 4;
    std::int64_t input_size = 64;
    BackboneKind raw_backbone = BackboneKind::conv_small;
    BackboneKind shape_backbone = BackboneKind::conv_small;
    std::vector<std::int64_t> raw_widths;    // empty: preset for raw_backbone
    std::vector<std::int64_t> shape_widths;  // empty: preset for shape_backbone
    std::int64_t reduction = 16;
    double dropout = 0.5;

    std::vector<std::int64_t> resolved_raw_widths() const {
        return raw_widths.empty() ? backbone_widths(raw_backbone) : raw_widths;
    }
    std::vector<std::int64_t> resolved_shape_widths() const {
        return shape_widths.empty() ? backbone_widths(shape_backbone) : shape_widths;
    }
};

// Two parallel feature extractors — one over the RGB image, one over the
// binary shape mask — fused as [f_r, f_sa, f_s] where f_sa is the
// attention-gated raw feature, followed by a 3-layer classifier head.
// In rgb_only mode the shape branch, attention, and fusion slots do not
// exist and the head consumes f_r directly.
template <typename T>
class DualBranchModelT {
public:
    DualBranchModelT() = default;

    explicit DualBranchModelT(ModelConfig cfg) : cfg_(cfg) {
        if (cfg_.class_count < 2) throw InvalidInputError("model needs at least 2 classes");
        if (cfg_.input_size < 4) throw InvalidInputError("model input size must be >= 4");
        const auto stages = std::max(cfg_.resolved_raw_widths().size(),
                                     cfg_.mode == ModelMode::dual
                                         ? cfg_.resolved_shape_widths().size()
                                         : std::size_t{0});
        if (cfg_.input_size < (std::int64_t{1} << stages))
            throw InvalidInputError("input size " + std::to_string(cfg_.input_size) +
                                    " too small for " + std::to_string(stages) +
                                    " pooling stages");
        raw_ = BackboneT<T>("raw", 3, cfg_.resolved_raw_widths());
        std::int64_t fused = raw_.feature_dim();
        if (cfg_.mode == ModelMode::dual) {
            shape_ = BackboneT<T>("shape", 1, cfg_.resolved_shape_widths());
            attention_ =
                ShapeAttentionT<T>(shape_.feature_dim(), raw_.feature_dim(), cfg_.reduction);
            fused = raw_.feature_dim() + raw_.feature_dim() + shape_.feature_dim();
        }
        fused_dim_ = fused;
        const std::int64_t h1 = std::max<std::int64_t>(1, fused / 2);
        const std::int64_t h2 = std::max<std::int64_t>(1, fused / 4);
        fc1_w_ = nn::TensorT<T>(nn::Shape{fused, h1});
        fc1_b_ = nn::TensorT<T>(nn::Shape{h1});
        fc2_w_ = nn::TensorT<T>(nn::Shape{h1, h2});
        fc2_b_ = nn::TensorT<T>(nn::Shape{h2});
        fc3_w_ = nn::TensorT<T>(nn::Shape{h2, cfg_.class_count});
        fc3_b_ = nn::TensorT<T>(nn::Shape{cfg_.class_count});
    }

    const ModelConfig& config() const { return cfg_; }
    std::int64_t fused_dim() const { return fused_dim_; }
    const ShapeAttentionT<T>& attention() const { return attention_; }
    const BackboneT<T>& raw_backbone() const { return raw_; }
    const BackboneT<T>& shape_backbone() const { return shape_; }

    void init(Rng& rng) {
        raw_.init(rng);
        if (cfg_.mode == ModelMode::dual) {
            shape_.init(rng);
            attention_.init(rng);
        }
        for (auto* w : {&fc1_w_, &fc2_w_, &fc3_w_}) {
            BackboneT<T>::kaiming_init(*w, w->dim(0), rng);
            w->set_requires_grad(true);
        }
        for (auto* b : {&fc1_b_, &fc2_b_, &fc3_b_}) {
            std::fill(b->values().begin(), b->values().end(), T(0));
            b->set_requires_grad(true);
        }
    }

    // images: [N,3,S,S]; masks: [N,1,S,S] (required iff mode is dual).
    nn::TensorT<T> forward(nn::TensorT<T> images, nn::TensorT<T> masks, bool training,
                           Rng& rng) const {
        check_batch(images, 3, "images");
        nn::TensorT<T> fused;
        auto f_r = raw_.forward(images);
        if (cfg_.mode == ModelMode::dual) {
            if (masks.numel() == 0)
                throw InvalidInputError("dual mode requires shape masks alongside images");
            check_batch(masks, 1, "masks");
            if (masks.dim(0) != images.dim(0))
                throw InvalidInputError("batch mismatch: " + std::to_string(images.dim(0)) +
                                        " images vs " + std::to_string(masks.dim(0)) + " masks");
            auto f_s = shape_.forward(masks);
            auto att = attention_.forward(f_s, f_r);
            fused = nn::concat_cols<T>({f_r, att.attended, f_s});
        } else {
            fused = f_r;
        }
        auto x = nn::relu(nn::fully_connected(fused, fc1_w_, fc1_b_));
        x = nn::dropout(x, cfg_.dropout, training, rng);
        x = nn::relu(nn::fully_connected(x, fc2_w_, fc2_b_));
        x = nn::dropout(x, cfg_.dropout, training, rng);
        return nn::fully_connected(x, fc3_w_, fc3_b_);
    }

    std::vector<std::pair<std::string, nn::TensorT<T>>> parameters() const {
        std::vector<std::pair<std::string, nn::TensorT<T>>> out;
        raw_.collect_params(out);
        if (cfg_.mode == ModelMode::dual) {
            shape_.collect_params(out);
            attention_.collect_params(out);
        }
        out.emplace_back("head.fc1.w", fc1_w_);
        out.emplace_back("head.fc1.b", fc1_b_);
        out.emplace_back("head.fc2.w", fc2_w_);
        out.emplace_back("head.fc2.b", fc2_b_);
        out.emplace_back("head.fc3.w", fc3_w_);
        out.emplace_back("head.fc3.b", fc3_b_);
        return out;
    }

    // Weight decay skips biases; a parameter is a weight iff rank > 1.
    static bool is_weight(const std::pair<std::string, nn::TensorT<T>>& p) {
        return p.second.rank() > 1;
    }

private:
    void check_batch(const nn::TensorT<T>& x, std::int64_t channels, const char* what) const {
        if (x.rank() != 4 || x.dim(1) != channels || x.dim(2) != cfg_.input_size ||
            x.dim(3) != cfg_.input_size)
            throw InvalidInputError(std::string("expected ") + what + " of shape [N," +
                                    std::to_string(channels) + "," +
                                    std::to_string(cfg_.input_size) + "," +
                                    std::to_string(cfg_.input_size) + "], got " +
                                    nn::shape_to_string(x.shape()));
    }

    ModelConfig cfg_;
    BackboneT<T> raw_, shape_;
    ShapeAttentionT<T> attention_;
    std::int64_t fused_dim_ = 0;
    nn::TensorT<T> fc1_w_, fc1_b_, fc2_w_, fc2_b_, fc3_w_, fc3_b_;
};

using DualBranchModel = DualBranchModelT<float>;

}  // namespace shapecell::models
