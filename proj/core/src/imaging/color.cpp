#include "shapecell/imaging/color.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace shapecell::imaging {

namespace {

void require_rgb(const Image& img, const char* op) {
    if (img.channels() != 3)
        throw InvalidInputError(std::string(op) + ": expected 3 channels, got " +
                                std::to_string(img.channels()));
}

}  // namespace

Image rgb_to_cmyk(const Image& img) {
    require_rgb(img, "rgb_to_cmyk");
    Image out(img.height(), img.width(), 4);
    const int n = img.height() * img.width();
    const float* src = img.data().data();
    float* dst = out.data().data();
    for (int i = 0; i < n; ++i) {
        const float r = src[i * 3 + 0];
        const float g = src[i * 3 + 1];
        const float b = src[i * 3 + 2];
        const float k = 1.0f - std::max(r, std::max(g, b));
        float c = 0.0f, m = 0.0f, y = 0.0f;
        if (k < 1.0f) {
            const float inv = 1.0f / (1.0f - k);
            c = (1.0f - r - k) * inv;
            m = (1.0f - g - k) * inv;
            y = (1.0f - b - k) * inv;
        }
        dst[i * 4 + 0] = std::clamp(c, 0.0f, 1.0f);
        dst[i * 4 + 1] = std::clamp(m, 0.0f, 1.0f);
        dst[i * 4 + 2] = std::clamp(y, 0.0f, 1.0f);
        dst[i * 4 + 3] = std::clamp(k, 0.0f, 1.0f);
    }
    return out;
}

Image rgb_to_hls(const Image& img) {
    require_rgb(img, "rgb_to_hls");
    Image out(img.height(), img.width(), 3);
    const int n = img.height() * img.width();
    const float* src = img.data().data();
    float* dst = out.data().data();
    for (int i = 0; i < n; ++i) {
        const float r = src[i * 3 + 0];
        const float g = src[i * 3 + 1];
        const float b = src[i * 3 + 2];
        const float mx = std::max(r, std::max(g, b));
        const float mn = std::min(r, std::min(g, b));
        const float l = 0.5f * (mx + mn);
        float h = 0.0f, s = 0.0f;
        const float delta = mx - mn;
        if (delta > 0.0f) {
            s = (l <= 0.5f) ? delta / (mx + mn) : delta / (2.0f - mx - mn);
            float hp;
            if (mx == r)
                hp = (g - b) / delta;
            else if (mx == g)
                hp = (b - r) / delta + 2.0f;
            else
                hp = (r - g) / delta + 4.0f;
            h = hp / 6.0f;
            if (h < 0.0f) h += 1.0f;
        }
        dst[i * 3 + 0] = std::clamp(h, 0.0f, 1.0f);
        dst[i * 3 + 1] = std::clamp(l, 0.0f, 1.0f);
        dst[i * 3 + 2] = std::clamp(s, 0.0f, 1.0f);
    }
    return out;
}

GrayMap compute_v_map(const Image& img) {
    require_rgb(img, "compute_v_map");
    const Image cmyk = rgb_to_cmyk(img);
    const Image hls = rgb_to_hls(img);
    GrayMap v(img.height(), img.width());
    const int n = img.height() * img.width();
    float lo = std::numeric_limits<float>::max();
    float hi = std::numeric_limits<float>::lowest();
    for (int i = 0; i < n; ++i) {
        const float m = cmyk.data()[i * 4 + 1];
        const float k = cmyk.data()[i * 4 + 3];
        const float s = hls.data()[i * 3 + 2];
        const float km = k - m;
        const float ms = std::min(m, s);
        const float val = ms - km;
        v.data()[i] = val;
        lo = std::min(lo, val);
        hi = std::max(hi, val);
    }
    const float range = hi - lo;
    if (range <= 0.0f) {
        std::fill(v.data().begin(), v.data().end(), 0.0f);
        return v;
    }
    const float inv = 1.0f / range;
    for (int i = 0; i < n; ++i) v.data()[i] = (v.data()[i] - lo) * inv;
    return v;
}

}  // namespace shapecell::imaging
