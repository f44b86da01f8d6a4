#pragma once

#include "shapecell/imaging/image.hpp"

namespace shapecell::imaging {

// Nearest-neighbor resample; exact identity when sizes already match.
Mask resize_nearest(const Mask& mask, int h, int w);

// Bilinear resample with half-pixel center alignment; exact identity when
// sizes already match.
Image resize_bilinear(const Image& img, int h, int w);

}  // namespace shapecell::imaging
