#include "shapecell/imaging/resize.hpp"

#include <algorithm>
#include <cmath>

namespace shapecell::imaging {

Mask resize_nearest(const Mask& mask, int h, int w) {
    if (h < 1 || w < 1) throw InvalidInputError("resize_nearest: target size must be positive");
    if (h == mask.height() && w == mask.width()) return mask;
    Mask out(h, w);
    const double sy = static_cast<double>(mask.height()) / h;
    const double sx = static_cast<double>(mask.width()) / w;
    for (int y = 0; y < h; ++y) {
        const int src_y = std::min(mask.height() - 1,
                                   static_cast<int>(std::floor((y + 0.5) * sy)));
        for (int x = 0; x < w; ++x) {
            const int src_x = std::min(mask.width() - 1,
                                       static_cast<int>(std::floor((x + 0.5) * sx)));
            out.set(y, x, mask.at(src_y, src_x));
        }
    }
    return out;
}

Image resize_bilinear(const Image& img, int h, int w) {
    if (h < 1 || w < 1) throw InvalidInputError("resize_bilinear: target size must be positive");
    if (h == img.height() && w == img.width()) return img;
    Image out(h, w, img.channels());
    const int ch = img.channels();
    const double sy = static_cast<double>(img.height()) / h;
    const double sx = static_cast<double>(img.width()) / w;
    for (int y = 0; y < h; ++y) {
        const double fy = std::clamp((y + 0.5) * sy - 0.5, 0.0, static_cast<double>(img.height() - 1));
        const int y0 = static_cast<int>(std::floor(fy));
        const int y1 = std::min(y0 + 1, img.height() - 1);
        const double wy = fy - y0;
        for (int x = 0; x < w; ++x) {
            const double fx = std::clamp((x + 0.5) * sx - 0.5, 0.0, static_cast<double>(img.width() - 1));
            const int x0 = static_cast<int>(std::floor(fx));
            const int x1 = std::min(x0 + 1, img.width() - 1);
            const double wx = fx - x0;
            for (int c = 0; c < ch; ++c) {
                const double top = img.at(y0, x0, c) * (1.0 - wx) + img.at(y0, x1, c) * wx;
                const double bot = img.at(y1, x0, c) * (1.0 - wx) + img.at(y1, x1, c) * wx;
                out.at(y, x, c) = static_cast<float>(top * (1.0 - wy) + bot * wy);
            }
        }
    }
    return out;
}

}  // namespace shapecell::imaging
