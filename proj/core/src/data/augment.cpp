#include "shapecell/data/augment.hpp"

#include <algorithm>
#include <cmath>

#include "shapecell/errors.hpp"
#include "shapecell/imaging/resize.hpp"

namespace shapecell::data {

using imaging::Image;
using imaging::Mask;

namespace {

constexpr double kLumaR = 0.299, kLumaG = 0.587, kLumaB = 0.114;

Image crop_image(const Image& img, int x0, int y0, int w, int h) {
    Image out(h, w, img.channels());
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            for (int c = 0; c < img.channels(); ++c)
                out.at(y, x, c) = img.at(y0 + y, x0 + x, c);
    return out;
}

Mask crop_mask(const Mask& m, int x0, int y0, int w, int h) {
    Mask out(h, w);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) out.set(y, x, m.at(y0 + y, x0 + x));
    return out;
}

void flip_image(Image& img, bool horizontal) {
    const int W = img.width(), H = img.height(), C = img.channels();
    if (horizontal) {
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W / 2; ++x)
                for (int c = 0; c < C; ++c) std::swap(img.at(y, x, c), img.at(y, W - 1 - x, c));
    } else {
        for (int y = 0; y < H / 2; ++y)
            for (int x = 0; x < W; ++x)
                for (int c = 0; c < C; ++c) std::swap(img.at(y, x, c), img.at(H - 1 - y, x, c));
    }
}

void flip_mask(Mask& m, bool horizontal) {
    const int W = m.width(), H = m.height();
    if (horizontal) {
        for (int y = 0; y < H; ++y)
            for (int x = 0; x < W / 2; ++x) {
                const bool t = m.at(y, x);
                m.set(y, x, m.at(y, W - 1 - x));
                m.set(y, W - 1 - x, t);
            }
    } else {
        for (int y = 0; y < H / 2; ++y)
            for (int x = 0; x < W; ++x) {
                const bool t = m.at(y, x);
                m.set(y, x, m.at(H - 1 - y, x));
                m.set(H - 1 - y, x, t);
            }
    }
}

}  // namespace

AugmentParams sample_augment(Rng& rng) {
    AugmentParams p;
    p.crop_scale = rng.uniform(0.8, 1.0);
    p.crop_x = rng.uniform();
    p.crop_y = rng.uniform();
    p.hflip = rng.bernoulli(0.5);
    p.vflip = rng.bernoulli(0.5);
    p.brightness = rng.uniform(0.6, 1.4);
    p.contrast = rng.uniform(0.6, 1.4);
    p.saturation = rng.uniform(0.6, 1.4);
    return p;
}

std::pair<Image, Mask> apply_augment(const Image& image, const Mask& mask,
                                     const AugmentParams& p) {
    if (image.channels() != 3) throw InvalidInputError("augment expects a 3-channel image");
    if (mask.width() != image.width() || mask.height() != image.height())
        throw InvalidInputError("augment expects image and mask of equal size");
    const int W = image.width(), H = image.height();

    Image img = image;
    Mask msk = mask;

    if (p.crop_scale < 1.0) {
        const double side = std::sqrt(p.crop_scale);
        const int cw = std::clamp(static_cast<int>(std::lround(side * W)), 1, W);
        const int ch = std::clamp(static_cast<int>(std::lround(side * H)), 1, H);
        const int x0 = static_cast<int>(std::lround(p.crop_x * (W - cw)));
        const int y0 = static_cast<int>(std::lround(p.crop_y * (H - ch)));
        img = imaging::resize_bilinear(crop_image(img, x0, y0, cw, ch), H, W);
        msk = imaging::resize_nearest(crop_mask(msk, x0, y0, cw, ch), H, W);
    }
    if (p.hflip) {
        flip_image(img, true);
        flip_mask(msk, true);
    }
    if (p.vflip) {
        flip_image(img, false);
        flip_mask(msk, false);
    }

    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            for (int c = 0; c < 3; ++c) img.at(y, x, c) *= static_cast<float>(p.brightness);

    double mean = 0.0;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            mean += kLumaR * img.at(y, x, 0) + kLumaG * img.at(y, x, 1) + kLumaB * img.at(y, x, 2);
    mean /= static_cast<double>(W) * H;
    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x)
            for (int c = 0; c < 3; ++c)
                img.at(y, x, c) = static_cast<float>(mean + (img.at(y, x, c) - mean) * p.contrast);

    for (int y = 0; y < H; ++y)
        for (int x = 0; x < W; ++x) {
            const double g = kLumaR * img.at(y, x, 0) + kLumaG * img.at(y, x, 1) +
                             kLumaB * img.at(y, x, 2);
            for (int c = 0; c < 3; ++c)
                img.at(y, x, c) = static_cast<float>(g + (img.at(y, x, c) - g) * p.saturation);
        }

    for (auto& v : img.data()) v = std::clamp(v, 0.0f, 1.0f);
    return {std::move(img), std::move(msk)};
}

}  // namespace shapecell::data
