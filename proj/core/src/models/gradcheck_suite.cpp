#include "shapecell/models/gradcheck_suite.hpp"

#include <cmath>

#include "shapecell/models/dual_branch.hpp"
#include "shapecell/nn/ops.hpp"
#include "shapecell/util/rng.hpp"

namespace shapecell::models {

namespace {

using nn::DTensor;

DTensor randn(nn::Shape shape, Rng& rng, double scale = 1.0) {
    DTensor t(std::move(shape));
    for (auto& v : t.values()) v = rng.uniform(-scale, scale);
    return t;
}

// Reduces an arbitrary op output to a scalar through fixed random
// weights so every output element influences the loss.
DTensor weighted_sum(DTensor out, const DTensor& w) { return nn::sum(nn::mul(out, w)); }

// Sigmoid with a deliberately wrong backward rule; exists so the
// checker's failure path can be demonstrated end to end.
DTensor faulty_sigmoid(DTensor x) {
    DTensor out(x.shape());
    const std::int64_t n = out.numel();
    for (std::int64_t i = 0; i < n; ++i) out[i] = 1.0 / (1.0 + std::exp(-x[i]));
    if (nn::grad_enabled() && x.requires_grad()) {
        out.set_requires_grad(true);
        auto xs = x.storage(), os = out.storage();
        nn::TapeT<double>::active().record("faulty_sigmoid", [xs, os, n]() {
            os->ensure_grad();
            xs->ensure_grad();
            for (std::int64_t i = 0; i < n; ++i) {
                const double s = os->value[i];
                xs->grad[i] += os->grad[i] * (s * (1.0 - s) + 0.02);
            }
        });
    }
    return out;
}

}  // namespace

std::vector<OpCheck> run_gradcheck_suite(FaultInjection fault) {
    std::vector<OpCheck> checks;
    constexpr double kOpTol = 1e-4;
    constexpr double kModelTol = 1e-3;
    Rng rng = Rng::seeded(20240811, 1);

    {
        auto a = randn({3, 4}, rng).set_requires_grad(true);
        auto b = randn({3, 4}, rng).set_requires_grad(true);
        auto w = randn({3, 4}, rng);
        checks.push_back({"add", kOpTol,
                          nn::gradcheck([&] { return weighted_sum(nn::add(a, b), w); },
                                        {{"a", a}, {"b", b}})});
    }
    {
        auto a = randn({3, 4}, rng).set_requires_grad(true);
        auto b = randn({3, 4}, rng).set_requires_grad(true);
        auto w = randn({3, 4}, rng);
        checks.push_back({"mul", kOpTol,
                          nn::gradcheck([&] { return weighted_sum(nn::mul(a, b), w); },
                                        {{"a", a}, {"b", b}})});
    }
    {
        auto x = randn({3, 4}, rng).set_requires_grad(true);
        for (auto& v : x.values())  // keep clear of the kink at 0
            if (std::abs(v) < 0.05) v += 0.2;
        auto w = randn({3, 4}, rng);
        checks.push_back({"relu", kOpTol,
                          nn::gradcheck([&] { return weighted_sum(nn::relu(x), w); },
                                        {{"x", x}})});
    }
    {
        auto x = randn({3, 4}, rng).set_requires_grad(true);
        auto w = randn({3, 4}, rng);
        const bool broken = fault == FaultInjection::sigmoid_backward;
        checks.push_back({"sigmoid", kOpTol,
                          nn::gradcheck(
                              [&, broken] {
                                  return weighted_sum(
                                      broken ? faulty_sigmoid(x) : nn::sigmoid(x), w);
                              },
                              {{"x", x}})});
    }
    {
        auto x = randn({5}, rng).set_requires_grad(true);
        checks.push_back({"sum", kOpTol,
                          nn::gradcheck([&] { return nn::sum(x); }, {{"x", x}})});
    }
    {
        auto x = randn({4, 6}, rng).set_requires_grad(true);
        auto w = randn({6, 3}, rng).set_requires_grad(true);
        auto b = randn({3}, rng).set_requires_grad(true);
        auto lw = randn({4, 3}, rng);
        checks.push_back({"fully_connected", kOpTol,
                          nn::gradcheck(
                              [&] { return weighted_sum(nn::fully_connected(x, w, b), lw); },
                              {{"x", x}, {"w", w}, {"b", b}})});
    }
    {
        auto x = randn({2, 3, 6, 6}, rng).set_requires_grad(true);
        auto w = randn({4, 3, 3, 3}, rng, 0.5).set_requires_grad(true);
        auto b = randn({4}, rng).set_requires_grad(true);
        auto lw = randn({2, 4, 6, 6}, rng);
        checks.push_back({"conv2d", kOpTol,
                          nn::gradcheck(
                              [&] { return weighted_sum(nn::conv2d(x, w, b, 1, 1), lw); },
                              {{"x", x}, {"w", w}, {"b", b}})});
    }
    {
        // Distinct, well-separated values keep the max stable under the
        // finite-difference probes.
        DTensor x({2, 2, 6, 6});
        std::vector<std::int64_t> perm(static_cast<std::size_t>(x.numel()));
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::int64_t>(i);
        rng.shuffle(perm);
        for (std::int64_t i = 0; i < x.numel(); ++i) x[i] = 0.01 * static_cast<double>(perm[i]);
        x.set_requires_grad(true);
        auto lw = randn({2, 2, 3, 3}, rng);
        checks.push_back({"maxpool2d", kOpTol,
                          nn::gradcheck(
                              [&] { return weighted_sum(nn::maxpool2d(x, 2, 2), lw); },
                              {{"x", x}})});
    }
    {
        auto x = randn({2, 3, 4, 4}, rng).set_requires_grad(true);
        auto lw = randn({2, 3}, rng);
        checks.push_back({"global_avg_pool", kOpTol,
                          nn::gradcheck(
                              [&] { return weighted_sum(nn::global_avg_pool(x), lw); },
                              {{"x", x}})});
    }
    {
        // Same well-separated construction as maxpool2d: a unique global max
        // per plane keeps the argmax stable under the probes.
        DTensor x({2, 3, 4, 4});
        std::vector<std::int64_t> perm(static_cast<std::size_t>(x.numel()));
        for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = static_cast<std::int64_t>(i);
        rng.shuffle(perm);
        for (std::int64_t i = 0; i < x.numel(); ++i) x[i] = 0.01 * static_cast<double>(perm[i]);
        x.set_requires_grad(true);
        auto lw = randn({2, 3}, rng);
        checks.push_back({"global_max_pool", kOpTol,
                          nn::gradcheck(
                              [&] { return weighted_sum(nn::global_max_pool(x), lw); },
                              {{"x", x}})});
    }
    {
        auto x = randn({3, 4}, rng).set_requires_grad(true);
        auto w = randn({3, 4}, rng);
        checks.push_back({"add_scalar", kOpTol,
                          nn::gradcheck([&] { return weighted_sum(nn::add_scalar(x, 0.7), w); },
                                        {{"x", x}})});
    }
    {
        auto x = randn({4, 8}, rng).set_requires_grad(true);
        auto lw = randn({4, 8}, rng);
        checks.push_back(
            {"dropout", kOpTol,
             nn::gradcheck(
                 [&] {
                     Rng mask_rng = Rng::seeded(9, 9);  // same mask every call
                     return weighted_sum(nn::dropout(x, 0.25, true, mask_rng), lw);
                 },
                 {{"x", x}})});
    }
    {
        auto a = randn({3, 2}, rng).set_requires_grad(true);
        auto b = randn({3, 4}, rng).set_requires_grad(true);
        auto c = randn({3, 3}, rng).set_requires_grad(true);
        auto lw = randn({3, 9}, rng);
        checks.push_back({"concat_cols", kOpTol,
                          nn::gradcheck(
                              [&] { return weighted_sum(nn::concat_cols<double>({a, b, c}), lw); },
                              {{"a", a}, {"b", b}, {"c", c}})});
    }
    {
        auto logits = randn({4, 5}, rng).set_requires_grad(true);
        const std::vector<std::int64_t> labels = {0, 2, 4, 1};
        checks.push_back({"softmax_cross_entropy", kOpTol,
                          nn::gradcheck(
                              [&] { return nn::softmax_cross_entropy(logits, labels); },
                              {{"logits", logits}})});
    }
    {
        ShapeAttentionT<double> att(4, 6, 16);
        Rng init = Rng::seeded(20240811, 2);
        att.init(init);
        std::vector<std::pair<std::string, DTensor>> params;
        att.collect_params(params);
        auto f_s = randn({2, 4}, rng).set_requires_grad(true);
        auto f_r = randn({2, 6}, rng).set_requires_grad(true);
        params.emplace_back("f_s", f_s);
        params.emplace_back("f_r", f_r);
        auto lw = randn({2, 6}, rng);
        checks.push_back({"shape_attention", kOpTol,
                          nn::gradcheck(
                              [&] { return weighted_sum(att.forward(f_s, f_r).attended, lw); },
                              params)});
    }
    {
        auto f_r = randn({2, 5}, rng).set_requires_grad(true);
        auto f_sa = randn({2, 5}, rng).set_requires_grad(true);
        auto f_s = randn({2, 3}, rng).set_requires_grad(true);
        auto lw = randn({2, 13}, rng);
        checks.push_back(
            {"fuse", kOpTol,
             nn::gradcheck(
                 [&] { return weighted_sum(nn::concat_cols<double>({f_r, f_sa, f_s}), lw); },
                 {{"f_r", f_r}, {"f_sa", f_sa}, {"f_s", f_s}})});
    }
    {
        ModelConfig mc;
        mc.mode = ModelMode::dual;
        mc.class_count = 4;
        mc.input_size = 8;
        // Last stage width 4 -> concatenated avg+max feature dim 8 per branch.
        mc.raw_widths = {4};
        mc.shape_widths = {4};
        DualBranchModelT<double> model(mc);
        Rng init = Rng::seeded(20240811, 3);
        model.init(init);
        auto images = randn({2, 3, 8, 8}, rng);
        // Mask values stay strictly inside (0, 1): exact 0/1 plateaus make
        // every max-pool window a tie, and a finite difference at a tie
        // measures the average of both branches while the analytic gradient
        // follows the first-index winner. The smaller step keeps the probe
        // away from relu/pool kinks that two conv stages accumulate.
        DTensor masks({2, 1, 8, 8});
        for (auto& v : masks.values()) v = rng.uniform(0.05, 0.95);
        const std::vector<std::int64_t> labels = {0, 2};
        checks.push_back({"full_model", kModelTol,
                          nn::gradcheck(
                              [&] {
                                  Rng drop = Rng::seeded(11, 11);
                                  auto logits = model.forward(images, masks, true, drop);
                                  return nn::softmax_cross_entropy(logits, labels);
                              },
                              model.parameters(), 1e-4, kModelTol)});
    }
    return checks;
}

}  // namespace shapecell::models
