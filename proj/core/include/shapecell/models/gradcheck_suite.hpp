#pragma once

#include <string>
#include <vector>

#include "shapecell/nn/gradcheck.hpp"

namespace shapecell::models {

// Fault hooks for exercising the failure path of the checker itself.
enum class FaultInjection { none, sigmoid_backward };

struct OpCheck {
    std::string name;
    double tolerance;
    nn::GradCheckReport report;
};

// Finite-difference checks (float64, central differences, h = 1e-3) for
// every differentiable op, the shape-attention block, fusion, and the
// full tiny dual-branch model (8x8 inputs, 8-dim features). Op checks use
// tolerance 1e-4; the full model uses 1e-3.
std::vector<OpCheck> run_gradcheck_suite(FaultInjection fault = FaultInjection::none);

}  // namespace shapecell::models
