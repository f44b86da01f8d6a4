#pragma once

#include "shapecell/imaging/image.hpp"

namespace shapecell::imaging {

// K = 1 - max(R,G,B); C,M,Y = (1-X-K)/(1-K) for K < 1, else 0.
Image rgb_to_cmyk(const Image& img);

// Hexcone HLS with H, L, S all scaled to [0,1]. H = 0 when max = min.
Image rgb_to_hls(const Image& img);

// V = min(M_cmyk, S_hls) - (K_cmyk - M_cmyk), affinely rescaled to [0,1]
// over the image (min -> 0, max -> 1). A constant raw map becomes all zeros.
GrayMap compute_v_map(const Image& img);

}  // namespace shapecell::imaging
