#pragma once

#include <cstdint>
#include <vector>

#include "shapecell/data/dataset.hpp"
#include "shapecell/nn/tensor.hpp"

namespace shapecell::data {

struct Batch {
    nn::Tensor images;  // [B,3,S,S]
    nn::Tensor masks;   // [B,1,S,S]; empty when masks were not requested
    std::vector<std::int64_t> labels;
};

// Decodes every sample once so epochs re-read from memory.
std::vector<LoadedSample> load_all(const std::vector<LabeledSample>& samples);

// Assembles CHW float batches, optionally augmenting. Each sample's
// augmentation RNG is derived from (seed, epoch, cache index), so the
// result is independent of worker count and batch composition.
Batch make_batch(const std::vector<LoadedSample>& cache, const std::vector<std::size_t>& indices,
                 std::int64_t input_size, bool with_masks, bool augment, std::uint64_t seed,
                 std::int64_t epoch);

}  // namespace shapecell::data
