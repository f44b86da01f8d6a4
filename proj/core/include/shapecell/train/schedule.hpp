#pragma once

#include <cmath>
#include <cstdint>

#include "shapecell/errors.hpp"
#include "shapecell/train/config.hpp"

namespace shapecell::train {

// Linear warmup from warmup_lr to max_lr over the warmup epochs, then
// cosine decay from max_lr to min_lr, reaching min_lr exactly at the
// final step. The ramp meets the decay at max_lr, so the schedule is
// continuous at the boundary.
inline double lr_at(std::int64_t step, const TrainConfig& cfg, std::int64_t steps_per_epoch) {
    if (step < 0 || steps_per_epoch < 1)
        throw InvalidInputError("lr_at needs step >= 0 and steps_per_epoch >= 1");
    const std::int64_t warmup = cfg.warmup_epochs * steps_per_epoch;
    const std::int64_t total = cfg.epochs * steps_per_epoch;
    if (step < warmup) {
        const double frac = static_cast<double>(step) / static_cast<double>(warmup);
        return cfg.warmup_lr + (cfg.max_lr - cfg.warmup_lr) * frac;
    }
    const std::int64_t decay_len = total - 1 - warmup;
    const double t = decay_len > 0
                         ? std::min(1.0, static_cast<double>(step - warmup) /
                                             static_cast<double>(decay_len))
                         : 1.0;
    constexpr double pi = 3.14159265358979323846;
    return cfg.min_lr + 0.5 * (cfg.max_lr - cfg.min_lr) * (1.0 + std::cos(pi * t));
}

}  // namespace shapecell::train
