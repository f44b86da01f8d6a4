#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shapecell/imaging/image.hpp"

namespace shapecell::imaging {

// Decodes an 8-bit PNG (gray, palette, RGB or RGBA; alpha discarded) into an
// RGB float image with values v/255.
Image read_png(const std::string& path);

// Reads a single-channel mask PNG; any nonzero sample is foreground.
Mask read_mask_png(const std::string& path);

// 8-bit RGB, rounded from [0,1] floats.
void write_png(const std::string& path, const Image& img);

// 8-bit single-channel, foreground=255, background=0.
void write_mask_png(const std::string& path, const Mask& mask);

// In-memory encodings; byte-for-byte what the file writers produce.
std::vector<std::uint8_t> encode_png(const Image& img);
std::vector<std::uint8_t> encode_mask_png(const Mask& mask);

}  // namespace shapecell::imaging
