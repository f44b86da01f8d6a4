#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "shapecell/data/split.hpp"
#include "shapecell/models/dual_branch.hpp"

namespace shapecell::train {

struct TrainConfig {
    std::int64_t epochs = 300;
    std::int64_t batch_size = 32;
    double momentum = 0.9;
    double weight_decay = 2e-5;
    double warmup_lr = 1e-4;
    double max_lr = 1e-3;
    double min_lr = 1e-4;
    std::int64_t warmup_epochs = 5;
    std::uint64_t seed = 42;
    models::ModelMode mode = models::ModelMode::dual;
    std::int64_t class_count = 4;
    std::int64_t input_size = 64;
    models::BackboneKind raw_backbone = models::BackboneKind::conv_small;
    models::BackboneKind shape_backbone = models::BackboneKind::conv_small;
    std::int64_t reduction = 16;
    double dropout = 0.5;
    double train_ratio = 0.7;
    double val_ratio = 0.1;
    double test_ratio = 0.2;

    models::ModelConfig model_config() const {
        models::ModelConfig mc;
        mc.mode = mode;
        mc.class_count = class_count;
        mc.input_size = input_size;
        mc.raw_backbone = raw_backbone;
        mc.shape_backbone = shape_backbone;
        mc.reduction = reduction;
        mc.dropout = dropout;
        return mc;
    }

    data::SplitRatios split_ratios() const { return {train_ratio, val_ratio, test_ratio}; }
};

// Flat `key = value` format; `#` starts a comment. Unknown keys and
// malformed values raise ConfigError, as do violated invariants
// (0 < min_lr <= warmup_lr <= max_lr, batch_size >= 1, ...).
TrainConfig parse_train_config_text(const std::string& text);
TrainConfig parse_train_config(const std::filesystem::path& path);

void validate(const TrainConfig& cfg);

// Canonical listing of every key, usable as a config file.
std::string to_text(const TrainConfig& cfg);

}  // namespace shapecell::train
