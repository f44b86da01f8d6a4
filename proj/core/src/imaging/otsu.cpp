#include "shapecell/imaging/otsu.hpp"

#include <algorithm>
#include <cmath>

namespace shapecell::imaging {

std::vector<std::int64_t> histogram(const GrayMap& gray, int bins) {
    if (bins < 2) throw InvalidInputError("histogram: bins must be >= 2");
    std::vector<std::int64_t> hist(bins, 0);
    for (float v : gray.data()) {
        int b = static_cast<int>(std::floor(static_cast<double>(v) * bins));
        b = std::clamp(b, 0, bins - 1);
        hist[b]++;
    }
    return hist;
}

OtsuResult otsu_threshold_hist(const std::vector<std::int64_t>& hist) {
    const int bins = static_cast<int>(hist.size());
    if (bins < 2) throw InvalidInputError("otsu_threshold: bins must be >= 2");

    std::int64_t total_count = 0;
    std::int64_t total_moment = 0;
    for (int i = 0; i < bins; ++i) {
        total_count += hist[i];
        total_moment += hist[i] * i;
    }

    OtsuResult result;
    double best = 0.0;
    int best_cut = 0;
    std::int64_t count0 = 0;
    std::int64_t moment0 = 0;
    for (int t = 1; t < bins; ++t) {
        count0 += hist[t - 1];
        moment0 += hist[t - 1] * static_cast<std::int64_t>(t - 1);
        const double score =
            otsu_cut_score(count0, moment0, total_count - count0, total_moment - moment0);
        if (score > best) {
            best = score;
            best_cut = t;
        }
    }

    if (best_cut == 0) {
        // Every cut scored zero: all mass sits in a single bin.
        result.threshold = 0.0;
        result.degenerate = true;
        return result;
    }
    result.threshold = static_cast<double>(best_cut) / bins;
    return result;
}

OtsuResult otsu_threshold(const GrayMap& gray, int bins) {
    return otsu_threshold_hist(histogram(gray, bins));
}

}  // namespace shapecell::imaging
