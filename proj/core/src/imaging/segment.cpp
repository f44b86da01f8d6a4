#include "shapecell/imaging/segment.hpp"

#include "shapecell/imaging/color.hpp"
#include "shapecell/imaging/mask_ops.hpp"
#include "shapecell/imaging/otsu.hpp"

namespace shapecell::imaging {

SegmentationResult segment_cell(const Image& img) {
    if (img.channels() != 3)
        throw SegmentationError("input", "expected a 3-channel RGB image");
    if (img.height() < 8 || img.width() < 8)
        throw SegmentationError("input", "image must be at least 8x8");

    SegmentationResult result;
    result.v_map = compute_v_map(img);

    // A degenerate histogram yields threshold 0; the empty foreground is
    // then caught below, at the binarize stage.
    const OtsuResult otsu = otsu_threshold(result.v_map);
    result.otsu_threshold = otsu.threshold;

    BinarizeResult bin = binarize(result.v_map, otsu.threshold);
    if (bin.empty)
        throw SegmentationError("binarize", "no foreground above threshold");
    result.nucleus = std::move(bin.mask);

    result.hull = convex_hull_mask(result.nucleus);
    result.cytoplasm = mask_subtract(result.hull, result.nucleus);
    return result;
}

}  // namespace shapecell::imaging
