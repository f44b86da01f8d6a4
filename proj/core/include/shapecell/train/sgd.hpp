#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shapecell/errors.hpp"
#include "shapecell/nn/tensor.hpp"

namespace shapecell::train {

// SGD with momentum; weight decay folds into the gradient:
//   g' = g + wd*p,  v = momentum*v + g',  p -= lr*v
// Decay applies to weights (rank > 1) only, never to biases. Gradients
// are consumed: step() zeroes them afterwards.
class SgdOptimizer {
public:
    SgdOptimizer(std::vector<std::pair<std::string, nn::Tensor>> params, double momentum,
                 double weight_decay)
        : momentum_(momentum), weight_decay_(weight_decay) {
        for (auto& [name, p] : params)
            slots_.push_back({name, p, std::vector<float>(static_cast<std::size_t>(p.numel()), 0.0f),
                              p.rank() > 1});
    }

    void step(double lr) {
        for (auto& s : slots_) {
            if (!s.param.has_grad())
                throw InvalidInputError("missing gradient for parameter '" + s.name + "'");
            auto& grad = s.param.grad();
            const double wd = s.decay ? weight_decay_ : 0.0;
            float* p = s.param.data();
            for (std::size_t i = 0; i < grad.size(); ++i) {
                const double g = static_cast<double>(grad[i]) + wd * static_cast<double>(p[i]);
                const double v = momentum_ * static_cast<double>(s.velocity[i]) + g;
                s.velocity[i] = static_cast<float>(v);
                p[i] = static_cast<float>(static_cast<double>(p[i]) - lr * v);
            }
        }
        zero_grad();
        ++steps_;
    }

    void zero_grad() {
        for (auto& s : slots_) s.param.zero_grad();
    }

    std::int64_t step_count() const { return steps_; }

private:
    struct Slot {
        std::string name;
        nn::Tensor param;
        std::vector<float> velocity;
        bool decay;
    };
    std::vector<Slot> slots_;
    double momentum_, weight_decay_;
    std::int64_t steps_ = 0;
};

}  // namespace shapecell::train
