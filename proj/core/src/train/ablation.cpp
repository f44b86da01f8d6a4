#include "shapecell/train/ablation.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>

#include "shapecell/errors.hpp"

namespace shapecell::train {

namespace {

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

AblationReport ablate(const data::Dataset& ds, TrainConfig base,
                      const std::vector<std::uint64_t>& seeds, std::ostream* progress) {
    if (seeds.empty()) throw InvalidInputError("ablation needs at least one seed");
    if (!ds.has_masks)
        throw DataError("ablation needs a masks/ tree for the dual-mode runs");

    AblationReport rep;
    std::vector<double> rgb_accs, dual_accs, deltas;
    for (const auto seed : seeds) {
        TrainConfig cfg = base;
        cfg.seed = seed;
        const auto split = data::stratified_split(ds, cfg.split_ratios(), seed);
        double acc_by_mode[2] = {0, 0};
        for (const auto mode : {models::ModelMode::rgb_only, models::ModelMode::dual}) {
            cfg.mode = mode;
            if (progress)
                *progress << "== seed " << seed << " mode " << models::to_string(mode) << "\n";
            auto result = train_model(split, cfg, progress);
            rep.runs.push_back({seed, mode, result.test_metrics});
            acc_by_mode[mode == models::ModelMode::dual ? 1 : 0] = result.test_metrics.accuracy;
        }
        rgb_accs.push_back(acc_by_mode[0]);
        dual_accs.push_back(acc_by_mode[1]);
        deltas.push_back(acc_by_mode[1] - acc_by_mode[0]);
    }
    rep.median_rgb_acc = median(rgb_accs);
    rep.median_dual_acc = median(dual_accs);
    rep.median_delta = median(deltas);
    return rep;
}

std::string format_ablation(const AblationReport& rep) {
    std::string out =
        "seed        mode       acc      macro_p  macro_r  macro_f1\n";
    char buf[160];
    for (const auto& r : rep.runs) {
        std::snprintf(buf, sizeof(buf), "%-11llu %-10s %.4f   %.4f   %.4f   %.4f\n",
                      static_cast<unsigned long long>(r.seed),
                      models::to_string(r.mode).c_str(), r.test.accuracy, r.test.macro_precision,
                      r.test.macro_recall, r.test.macro_f1);
        out += buf;
    }
    std::snprintf(buf, sizeof(buf),
                  "median: rgb_only %.4f  dual %.4f  delta %+.2f points\n", rep.median_rgb_acc,
                  rep.median_dual_acc, 100.0 * rep.median_delta);
    out += buf;
    return out;
}

}  // namespace shapecell::train
