#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shapecell/models/backbone.hpp"
#include "shapecell/nn/ops.hpp"
#include "shapecell/nn/tensor.hpp"

namespace shapecell::models {

inline std::int64_t attention_hidden_dim(std::int64_t d_s, std::int64_t reduction = 16) {
    return std::max<std::int64_t>(8, d_s / reduction);
}

// Squeeze-and-excitation style gate: the shape feature is squeezed through
// a bottleneck and produces a sigmoid gate applied to the raw feature.
//   w_sa = sigmoid(W2 * relu(W1 * f_s + b1) + b2),  f_sa = w_sa * f_r
template <typename T>
class ShapeAttentionT {
public:
    ShapeAttentionT() = default;

    ShapeAttentionT(std::int64_t d_s, std::int64_t d_r, std::int64_t reduction = 16)
        : d_s_(d_s), d_r_(d_r), d_h_(attention_hidden_dim(d_s, reduction)) {
        w1_ = nn::TensorT<T>(nn::Shape{d_s_, d_h_});
        b1_ = nn::TensorT<T>(nn::Shape{d_h_});
        w2_ = nn::TensorT<T>(nn::Shape{d_h_, d_r_});
        b2_ = nn::TensorT<T>(nn::Shape{d_r_});
    }

    std::int64_t hidden_dim() const { return d_h_; }

    std::int64_t param_count() const { return d_s_ * d_h_ + d_h_ + d_h_ * d_r_ + d_r_; }

    void init(Rng& rng) {
        BackboneT<T>::kaiming_init(w1_, d_s_, rng);
        BackboneT<T>::kaiming_init(w2_, d_h_, rng);
        std::fill(b1_.values().begin(), b1_.values().end(), T(0));
        std::fill(b2_.values().begin(), b2_.values().end(), T(0));
        for (auto* t : {&w1_, &b1_, &w2_, &b2_}) t->set_requires_grad(true);
    }

    struct Output {
        nn::TensorT<T> gate;      // w_sa, in (0,1)
        nn::TensorT<T> attended;  // f_sa = w_sa * f_r
    };

    Output forward(nn::TensorT<T> f_s, nn::TensorT<T> f_r) const {
        if (f_s.rank() != 2 || f_s.dim(1) != d_s_)
            throw InvalidInputError("shape attention: expected f_s [N," + std::to_string(d_s_) +
                                    "], got " + nn::shape_to_string(f_s.shape()));
        if (f_r.rank() != 2 || f_r.dim(1) != d_r_ || f_r.dim(0) != f_s.dim(0))
            throw InvalidInputError("shape attention: expected f_r [" +
                                    std::to_string(f_s.dim(0)) + "," + std::to_string(d_r_) +
                                    "], got " + nn::shape_to_string(f_r.shape()));
        auto h = nn::relu(nn::fully_connected(f_s, w1_, b1_));
        auto gate = nn::sigmoid(nn::fully_connected(h, w2_, b2_));
        return Output{gate, nn::mul(gate, f_r)};
    }

    void collect_params(std::vector<std::pair<std::string, nn::TensorT<T>>>& out) const {
        out.emplace_back("attention.w1", w1_);
        out.emplace_back("attention.b1", b1_);
        out.emplace_back("attention.w2", w2_);
        out.emplace_back("attention.b2", b2_);
    }

private:
    std::int64_t d_s_ = 0, d_r_ = 0, d_h_ = 0;
    nn::TensorT<T> w1_, b1_, w2_, b2_;
};

}  // namespace shapecell::models
