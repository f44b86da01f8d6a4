#pragma once

#include <cstdint>
#include <filesystem>

#include "shapecell/data/dataset.hpp"

namespace shapecell::data {

struct SplitRatios {
    double train = 0.7;
    double val = 0.1;
    double test = 0.2;
};

struct DatasetSplit {
    std::vector<LabeledSample> train, val, test;
    std::uint64_t seed = 0;
};

// Shuffles each class with a seeded per-class RNG substream, then cuts
// contiguous segments. Sizes: val = floor(val_ratio*n), test =
// floor(test_ratio*n), train takes the remainder, so val/test hit their
// ratios within one sample per class and rounding slack lands in train.
DatasetSplit stratified_split(const Dataset& ds, const SplitRatios& ratios, std::uint64_t seed);

// Lines of `path<TAB>class<TAB>split`, train then val then test.
void write_split_manifest(const std::filesystem::path& path, const DatasetSplit& split);

}  // namespace shapecell::data
