#include "shapecell/data/split.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "shapecell/errors.hpp"
#include "shapecell/util/rng.hpp"

namespace shapecell::data {

DatasetSplit stratified_split(const Dataset& ds, const SplitRatios& ratios, std::uint64_t seed) {
    if (ratios.train <= 0 || ratios.val <= 0 || ratios.test <= 0)
        throw InvalidInputError("split ratios must be positive");
    if (std::abs(ratios.train + ratios.val + ratios.test - 1.0) > 1e-9)
        throw InvalidInputError("split ratios must sum to 1");

    DatasetSplit split;
    split.seed = seed;
    for (std::size_t label = 0; label < ds.class_names.size(); ++label) {
        std::vector<const LabeledSample*> members;
        for (const auto& s : ds.samples)
            if (s.label == static_cast<std::int64_t>(label)) members.push_back(&s);
        const auto n = static_cast<std::int64_t>(members.size());
        if (n == 0) continue;

        Rng rng = Rng::seeded(seed, static_cast<std::uint64_t>(label));
        rng.shuffle(members);

        const auto n_val = static_cast<std::int64_t>(std::floor(ratios.val * static_cast<double>(n)));
        const auto n_test = static_cast<std::int64_t>(std::floor(ratios.test * static_cast<double>(n)));
        const std::int64_t n_train = n - n_val - n_test;
        if (n_val == 0 || n_test == 0)
            std::cerr << "warning: class '" << ds.class_names[label] << "' has only " << n
                      << " samples; too few to fill every split\n";

        for (std::int64_t i = 0; i < n_train; ++i) split.train.push_back(*members[i]);
        for (std::int64_t i = n_train; i < n_train + n_val; ++i) split.val.push_back(*members[i]);
        for (std::int64_t i = n_train + n_val; i < n; ++i) split.test.push_back(*members[i]);
    }
    return split;
}

void write_split_manifest(const std::filesystem::path& path, const DatasetSplit& split) {
    std::ofstream os(path);
    if (!os) throw DataError("cannot write split manifest: " + path.string());
    auto emit = [&os](const std::vector<LabeledSample>& v, const char* name) {
        for (const auto& s : v)
            os << s.image_path.string() << '\t' << s.class_name << '\t' << name << '\n';
    };
    emit(split.train, "train");
    emit(split.val, "val");
    emit(split.test, "test");
    if (!os) throw DataError("failed writing split manifest: " + path.string());
}

}  // namespace shapecell::data
