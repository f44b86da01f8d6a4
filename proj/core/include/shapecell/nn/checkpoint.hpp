#pragma once

#include <string>
#include <utility>
#include <vector>

#include "shapecell/nn/tensor.hpp"

namespace shapecell::nn {

// Binary weight container. Layout (little-endian):
//   "SCKP" | u32 version | u64 count
//   per entry: u64 name_len | name bytes | u64 rank | u64 extents[rank] | f32 data
// Entry order is preserved, so identical weights produce identical bytes.
void save_checkpoint(const std::string& path,
                     const std::vector<std::pair<std::string, Tensor>>& entries);

std::vector<std::pair<std::string, Tensor>> load_checkpoint(const std::string& path);

}  // namespace shapecell::nn
