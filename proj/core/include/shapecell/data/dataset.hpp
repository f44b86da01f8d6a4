#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "shapecell/imaging/image.hpp"

namespace shapecell::data {

struct LabeledSample {
    std::filesystem::path image_path;
    std::filesystem::path mask_path;  // empty when no mask exists
    std::int64_t label = 0;
    std::string class_name;
};

struct Dataset {
    std::vector<std::string> class_names;  // sorted; index = label
    std::vector<LabeledSample> samples;    // ordered by (class, filename)
    bool has_masks = false;                // true iff every sample has a mask

    std::vector<std::int64_t> class_counts() const {
        std::vector<std::int64_t> counts(class_names.size(), 0);
        for (const auto& s : samples) ++counts[static_cast<std::size_t>(s.label)];
        return counts;
    }
};

// Scans `root/<class_name>/*.png` with an optional mirrored
// `root/masks/<class_name>/*.png` tree of binary masks (same stems).
// Class indices follow lexicographically sorted directory names; samples
// are sorted by filename within each class. Empty class directories are
// kept (with a warning on stderr) so the class set stays stable.
Dataset scan_dataset(const std::filesystem::path& root);

// Decoded sample held in memory for repeated epochs.
struct LoadedSample {
    imaging::Image image{1, 1, 3};
    imaging::Mask mask{};  // 0x0 when the sample has no mask
    std::int64_t label = 0;
};

LoadedSample load_sample(const LabeledSample& s);

}  // namespace shapecell::data
