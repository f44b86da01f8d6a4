#pragma once

#include <cstdint>
#include <vector>

#include "shapecell/imaging/image.hpp"

namespace shapecell::imaging {

struct BinarizeResult {
    Mask mask;
    bool empty = false;  // no pixel exceeded the threshold
};

// Foreground = value > t, then only the largest 4-connected component is
// kept (ties go to the component encountered first in row-major order).
BinarizeResult binarize(const GrayMap& gray, double t);

// Largest 4-connected foreground component of `mask`; empty input stays empty.
Mask largest_component(const Mask& mask);

// Filled convex hull of the foreground pixel centers: monotone-chain hull,
// rasterized by an exact integer point-in-polygon test. Output is a superset
// of the input and convex as a pixel set. Throws on an empty input mask.
Mask convex_hull_mask(const Mask& mask);

// Pixelwise a AND NOT b.
Mask mask_subtract(const Mask& a, const Mask& b);

// Intersection-over-union of two equal-sized masks (1.0 when both empty).
double mask_iou(const Mask& a, const Mask& b);

// 4*pi*area/perimeter^2 with a digital perimeter estimate (weighted chain
// code plus half-pixel outline offset). Approaches 1 for a digitized disc.
double mask_roundness(const Mask& mask);

// sqrt of the ratio of principal second moments; 1 for isotropic blobs,
// a/b for a filled ellipse with semi-axes a >= b.
double mask_aspect_ratio(const Mask& mask);

}  // namespace shapecell::imaging
