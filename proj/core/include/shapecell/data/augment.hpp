#pragma once

#include <utility>

#include "shapecell/imaging/image.hpp"
#include "shapecell/util/rng.hpp"

namespace shapecell::data {

// One sampled augmentation, applied in a fixed order: area crop (resized
// back to the original dims), horizontal flip, vertical flip, then color
// jitter on the image only. Geometric steps hit image and mask alike;
// masks are resampled nearest-neighbor and stay binary.
struct AugmentParams {
    double crop_scale = 1.0;  // area fraction kept, in [0.8, 1.0]
    double crop_x = 0.0;      // offset as fraction of horizontal slack
    double crop_y = 0.0;
    bool hflip = false;
    bool vflip = false;
    double brightness = 1.0;
    double contrast = 1.0;
    double saturation = 1.0;
};

AugmentParams sample_augment(Rng& rng);

std::pair<imaging::Image, imaging::Mask> apply_augment(const imaging::Image& image,
                                                       const imaging::Mask& mask,
                                                       const AugmentParams& p);

}  // namespace shapecell::data
