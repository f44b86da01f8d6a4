#pragma once

#include <iosfwd>

#include "shapecell/data/dataset.hpp"
#include "shapecell/train/trainer.hpp"

namespace shapecell::train {

struct AblationRun {
    std::uint64_t seed = 0;
    models::ModelMode mode = models::ModelMode::dual;
    Metrics test;
};

struct AblationReport {
    std::vector<AblationRun> runs;  // rgb_only then dual, per seed
    double median_rgb_acc = 0;
    double median_dual_acc = 0;
    double median_delta = 0;  // per-seed dual - rgb_only accuracy, median
};

// Trains both modes per seed on the identical stratified split and
// schedule; the accuracy delta isolates the shape branch's contribution.
AblationReport ablate(const data::Dataset& ds, TrainConfig base,
                      const std::vector<std::uint64_t>& seeds, std::ostream* progress = nullptr);

std::string format_ablation(const AblationReport& rep);

}  // namespace shapecell::train
