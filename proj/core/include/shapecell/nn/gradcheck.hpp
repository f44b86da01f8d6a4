#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "shapecell/nn/tape.hpp"
#include "shapecell/nn/tensor.hpp"

namespace shapecell::nn {

struct GradCheckReport {
    double max_rel_err = 0.0;
    std::string worst_tensor;
    std::int64_t worst_index = -1;
    std::int64_t checked = 0;
    bool passed = false;
};

inline double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({1e-6, std::abs(a), std::abs(b)});
}

// Compares reverse-mode gradients against central finite differences in
// float64. `fn` must be a pure function of the parameter values. When
// max_per_tensor > 0, an evenly strided subset of each tensor is probed.
inline GradCheckReport gradcheck(const std::function<DTensor()>& fn,
                                 const std::vector<std::pair<std::string, DTensor>>& params,
                                 double h = 1e-3, double tol = 1e-4,
                                 std::int64_t max_per_tensor = -1) {
    for (const auto& [name, p] : params) {
        (void)name;
        const_cast<DTensor&>(p).zero_grad();
    }
    TapeT<double>::active().clear();
    DTensor loss = fn();
    backward(loss);

    GradCheckReport rep;
    for (const auto& [name, p] : params) {
        DTensor t = p;
        const std::int64_t n = t.numel();
        const std::int64_t checks =
            (max_per_tensor > 0 && max_per_tensor < n) ? max_per_tensor : n;
        for (std::int64_t c = 0; c < checks; ++c) {
            const std::int64_t i = (checks == n) ? c : (c * n) / checks;
            const double v = t[i];
            double lp, lm;
            {
                NoGradGuard ng;
                t[i] = v + h;
                lp = fn()[0];
                t[i] = v - h;
                lm = fn()[0];
                t[i] = v;
            }
            const double fd = (lp - lm) / (2.0 * h);
            const double an = t.grad()[i];
            const double e = rel_err(fd, an);
            ++rep.checked;
            if (e > rep.max_rel_err) {
                rep.max_rel_err = e;
                rep.worst_tensor = name;
                rep.worst_index = i;
            }
        }
    }
    rep.passed = rep.max_rel_err < tol;
    return rep;
}

}  // namespace shapecell::nn
