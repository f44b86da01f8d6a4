#pragma once

#include <string>

#include "shapecell/imaging/image.hpp"

namespace shapecell::imaging {

// Raised when a pipeline stage cannot produce a usable mask; `stage` names
// the failing step.
class SegmentationError : public std::runtime_error {
public:
    SegmentationError(std::string stage, const std::string& msg)
        : std::runtime_error("segmentation failed at stage '" + stage + "': " + msg),
          stage_(std::move(stage)) {}
    const std::string& stage() const { return stage_; }

private:
    std::string stage_;
};

struct SegmentationResult {
    Mask hull;       // convex hull of the thresholded cell body
    Mask nucleus;    // largest thresholded component
    Mask cytoplasm;  // hull AND NOT nucleus
    GrayMap v_map;
    double otsu_threshold = 0.0;
};

// Full pipeline: RGB -> CMYK/HLS channel arithmetic -> V map -> Otsu ->
// largest-component binarization -> convex hull -> cytoplasm subtraction.
// Guarantees nucleus as a subset of hull and cytoplasm = hull - nucleus.
SegmentationResult segment_cell(const Image& img);

}  // namespace shapecell::imaging
