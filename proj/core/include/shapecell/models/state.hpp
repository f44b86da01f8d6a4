#pragma once

#include <string>

#include "shapecell/models/dual_branch.hpp"

namespace shapecell::models {

// Writes a checkpoint with a leading "__meta__" entry encoding the
// architecture (mode, class count, input size, backbone kinds, reduction,
// dropout), so a model can be reconstructed from the file alone.
void save_model(const std::string& path, const DualBranchModel& model);

// Rebuilds the architecture from "__meta__" and loads all weights.
DualBranchModel load_model(const std::string& path);

// Loads weights into an existing model; every parameter must be present
// with a matching shape.
void load_weights(DualBranchModel& model,
                  const std::vector<std::pair<std::string, nn::Tensor>>& entries);

}  // namespace shapecell::models
