#include "shapecell/data/batch.hpp"

#include "shapecell/data/augment.hpp"
#include "shapecell/errors.hpp"
#include "shapecell/imaging/resize.hpp"
#include "shapecell/util/parallel.hpp"
#include "shapecell/util/rng.hpp"

namespace shapecell::data {

std::vector<LoadedSample> load_all(const std::vector<LabeledSample>& samples) {
    std::vector<LoadedSample> out(samples.size());
    parallel_for(static_cast<std::int64_t>(samples.size()), [&](std::int64_t b, std::int64_t e) {
        for (std::int64_t i = b; i < e; ++i)
            out[static_cast<std::size_t>(i)] = load_sample(samples[static_cast<std::size_t>(i)]);
    });
    return out;
}

Batch make_batch(const std::vector<LoadedSample>& cache, const std::vector<std::size_t>& indices,
                 std::int64_t input_size, bool with_masks, bool augment, std::uint64_t seed,
                 std::int64_t epoch) {
    const auto B = static_cast<std::int64_t>(indices.size());
    if (B == 0) throw InvalidInputError("make_batch: empty index list");
    const std::int64_t S = input_size;
    Batch batch;
    batch.images = nn::Tensor(nn::Shape{B, 3, S, S});
    if (with_masks) batch.masks = nn::Tensor(nn::Shape{B, 1, S, S});
    batch.labels.resize(static_cast<std::size_t>(B));

    parallel_for(B, [&](std::int64_t b0, std::int64_t b1) {
        for (std::int64_t b = b0; b < b1; ++b) {
            const LoadedSample& src = cache[indices[static_cast<std::size_t>(b)]];
            if (with_masks && src.mask.width() == 0)
                throw DataError("sample lacks a shape mask required by dual mode");
            imaging::Image img = src.image;
            imaging::Mask msk = src.mask.width() > 0 ? src.mask
                                                     : imaging::Mask(img.height(), img.width());
            if (augment) {
                const std::uint64_t salt =
                    (static_cast<std::uint64_t>(epoch) + 1) << 32 |
                    static_cast<std::uint64_t>(indices[static_cast<std::size_t>(b)]);
                Rng rng = Rng::seeded(seed, salt);
                auto [ai, am] = apply_augment(img, msk, sample_augment(rng));
                img = std::move(ai);
                msk = std::move(am);
            }
            if (img.width() != S || img.height() != S)
                img = imaging::resize_bilinear(img, static_cast<int>(S), static_cast<int>(S));
            float* ip = batch.images.data() + b * 3 * S * S;
            for (std::int64_t y = 0; y < S; ++y)
                for (std::int64_t x = 0; x < S; ++x)
                    for (std::int64_t c = 0; c < 3; ++c)
                        ip[c * S * S + y * S + x] =
                            img.at(static_cast<int>(y), static_cast<int>(x),
                                   static_cast<int>(c));
            if (with_masks) {
                if (msk.width() != S || msk.height() != S)
                    msk = imaging::resize_nearest(msk, static_cast<int>(S), static_cast<int>(S));
                float* mp = batch.masks.data() + b * S * S;
                for (std::int64_t y = 0; y < S; ++y)
                    for (std::int64_t x = 0; x < S; ++x)
                        mp[y * S + x] = msk.at(static_cast<int>(y), static_cast<int>(x)) ? 1.0f
                                                                                         : 0.0f;
            }
            batch.labels[static_cast<std::size_t>(b)] = src.label;
        }
    });
    return batch;
}

}  // namespace shapecell::data
