#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "shapecell/imaging/image.hpp"
#include "shapecell/util/rng.hpp"

namespace shapecell::data {

enum class ContourStyle {
    elliptical_protrusions,
    round_protrusions,
    round_rough,
    round_smooth,
};

struct SyntheticCellSpec {
    std::string class_name;
    double diameter_um_min = 0;
    double diameter_um_max = 0;
    ContourStyle style = ContourStyle::round_smooth;
    double nucleus_ratio_min = 0;  // nucleus radius / cell radius
    double nucleus_ratio_max = 0;
    std::array<float, 3> cyto_base{};
    std::array<float, 3> nucleus_base{};
};

// The four erythroid maturation stages with their published diameter
// ranges and shape characters. Cytoplasm palettes overlap deliberately:
// per-image stain jitter exceeds the between-class color differences, so
// shape — not color — carries most of the class signal.
std::vector<SyntheticCellSpec> default_cell_specs();

struct SyntheticCell {
    imaging::Image image{1, 1, 3};
    imaging::Mask truth{1, 1};
    std::int64_t label = 0;
};

// Renders one cell on a cluttered light background and returns the exact
// foreground region as the truth mask.
SyntheticCell synthesize_cell(const SyntheticCellSpec& spec, Rng& rng, int image_size);

// Writes `out/<class>/<class>_NNNN.png` plus a mirrored `out/masks/` truth
// tree; per-sample RNG substreams make the tree a pure function of (seed,
// n_per_class, image_size).
void make_synthetic_dataset(const std::filesystem::path& out, int n_per_class,
                            std::uint64_t seed, int image_size = 64);

}  // namespace shapecell::data
