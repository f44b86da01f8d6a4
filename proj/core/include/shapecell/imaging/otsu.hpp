#pragma once

#include <cstdint>
#include <vector>

#include "shapecell/imaging/image.hpp"

namespace shapecell::imaging {

struct OtsuResult {
    double threshold = 0.0;   // bin boundary in [0,1]
    bool degenerate = false;  // all mass in one bin; threshold forced to 0
};

// Histogram of values in [0,1] quantized to `bins` buckets.
// bin(v) = min(bins-1, floor(v * bins)).
std::vector<std::int64_t> histogram(const GrayMap& gray, int bins);

// Between-class variance score of the cut placing bins [0,t) in class 0 and
// [t,bins) in class 1, computed from exact integer moments. Both the
// production scan and the brute-force test oracle call this with moments they
// derived independently, so equal histograms give bit-equal scores.
inline double otsu_cut_score(std::int64_t count0, std::int64_t moment0,
                             std::int64_t count1, std::int64_t moment1) {
    if (count0 == 0 || count1 == 0) return 0.0;
    const std::int64_t cross = moment0 * count1 - moment1 * count0;
    const double num = static_cast<double>(cross);
    return num * num / (static_cast<double>(count0) * static_cast<double>(count1));
}

// Threshold maximizing between-class variance over the histogram. Ties break
// toward the lowest threshold. The returned threshold is the bin boundary
// t/bins in [0,1]; foreground is the value range strictly above it.
OtsuResult otsu_threshold(const GrayMap& gray, int bins = 256);

// Same maximization over a prebuilt histogram.
OtsuResult otsu_threshold_hist(const std::vector<std::int64_t>& hist);

}  // namespace shapecell::imaging
