#include "shapecell/imaging/mask_ops.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

namespace shapecell::imaging {

namespace {

struct Pt {
    std::int64_t x;
    std::int64_t y;
};

std::int64_t cross(const Pt& o, const Pt& a, const Pt& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Monotone chain. Returns hull vertices in counterclockwise order (with the
// pixel y axis read as a plain plane coordinate); collinear points dropped.
std::vector<Pt> monotone_chain(std::vector<Pt> pts) {
    std::sort(pts.begin(), pts.end(), [](const Pt& a, const Pt& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Pt& a, const Pt& b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;

    std::vector<Pt> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {  // lower
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper
        while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool on_segment(const Pt& a, const Pt& b, const Pt& p) {
    if (cross(a, b, p) != 0) return false;
    return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= p.y && p.y <= std::max(a.y, b.y);
}

bool inside_hull(const std::vector<Pt>& hull, const Pt& p) {
    if (hull.size() == 1) return p.x == hull[0].x && p.y == hull[0].y;
    if (hull.size() == 2) return on_segment(hull[0], hull[1], p);
    for (std::size_t i = 0; i < hull.size(); ++i) {
        const Pt& a = hull[i];
        const Pt& b = hull[(i + 1) % hull.size()];
        if (cross(a, b, p) < 0) return false;
    }
    return true;
}

}  // namespace

Mask largest_component(const Mask& mask) {
    const int h = mask.height();
    const int w = mask.width();
    Mask out(h, w);
    std::vector<std::int32_t> label(static_cast<std::size_t>(h) * w, -1);
    std::int32_t best_label = -1;
    std::int64_t best_size = 0;
    std::int32_t next_label = 0;
    std::vector<std::int64_t> stack;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::int64_t idx = static_cast<std::int64_t>(y) * w + x;
            if (!mask.data()[idx] || label[idx] != -1) continue;
            std::int64_t size = 0;
            stack.push_back(idx);
            label[idx] = next_label;
            while (!stack.empty()) {
                const std::int64_t cur = stack.back();
                stack.pop_back();
                ++size;
                const int cy = static_cast<int>(cur / w);
                const int cx = static_cast<int>(cur % w);
                const int ny[4] = {cy - 1, cy + 1, cy, cy};
                const int nx[4] = {cx, cx, cx - 1, cx + 1};
                for (int d = 0; d < 4; ++d) {
                    if (ny[d] < 0 || ny[d] >= h || nx[d] < 0 || nx[d] >= w) continue;
                    const std::int64_t nidx = static_cast<std::int64_t>(ny[d]) * w + nx[d];
                    if (mask.data()[nidx] && label[nidx] == -1) {
                        label[nidx] = next_label;
                        stack.push_back(nidx);
                    }
                }
            }
            if (size > best_size) {  // strict: first component wins ties
                best_size = size;
                best_label = next_label;
            }
            ++next_label;
        }
    }

    if (best_label >= 0) {
        for (std::size_t i = 0; i < label.size(); ++i)
            if (label[i] == best_label) out.data()[i] = 1;
    }
    return out;
}

BinarizeResult binarize(const GrayMap& gray, double t) {
    if (t < 0.0 || t > 1.0) throw InvalidInputError("binarize: threshold must lie in [0,1]");
    BinarizeResult result;
    result.mask = Mask(gray.height(), gray.width());
    bool any = false;
    for (std::size_t i = 0; i < gray.data().size(); ++i) {
        if (static_cast<double>(gray.data()[i]) > t) {
            result.mask.data()[i] = 1;
            any = true;
        }
    }
    if (!any) {
        result.empty = true;
        return result;
    }
    result.mask = largest_component(result.mask);
    return result;
}

Mask convex_hull_mask(const Mask& mask) {
    const int h = mask.height();
    const int w = mask.width();
    std::vector<Pt> pts;
    std::int64_t min_x = w, max_x = -1, min_y = h, max_y = -1;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(y, x)) continue;
            pts.push_back({x, y});
            min_x = std::min<std::int64_t>(min_x, x);
            max_x = std::max<std::int64_t>(max_x, x);
            min_y = std::min<std::int64_t>(min_y, y);
            max_y = std::max<std::int64_t>(max_y, y);
        }
    }
    if (pts.empty()) throw InvalidInputError("convex_hull_mask: empty input mask");

    const std::vector<Pt> hull = monotone_chain(std::move(pts));
    Mask out(h, w);
    for (std::int64_t y = min_y; y <= max_y; ++y)
        for (std::int64_t x = min_x; x <= max_x; ++x)
            if (inside_hull(hull, {x, y})) out.set(static_cast<int>(y), static_cast<int>(x), true);
    return out;
}

Mask mask_subtract(const Mask& a, const Mask& b) {
    require_same_size(a, b, "mask_subtract");
    Mask out(a.height(), a.width());
    for (std::size_t i = 0; i < a.data().size(); ++i)
        out.data()[i] = (a.data()[i] && !b.data()[i]) ? 1 : 0;
    return out;
}

double mask_iou(const Mask& a, const Mask& b) {
    require_same_size(a, b, "mask_iou");
    std::int64_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        const bool pa = a.data()[i] != 0;
        const bool pb = b.data()[i] != 0;
        inter += (pa && pb);
        uni += (pa || pb);
    }
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

// Moore-neighbor boundary trace around the outer contour of the blob
// containing the first foreground pixel (raster order). Records the chain
// of move directions (indices into the clockwise neighbor table below) for
// one full closed circuit.
void trace_boundary(const Mask& mask, std::vector<int>& chain) {
    chain.clear();
    const int h = mask.height();
    const int w = mask.width();
    int sy = -1, sx = -1;
    for (int y = 0; y < h && sy < 0; ++y)
        for (int x = 0; x < w; ++x)
            if (mask.at(y, x)) {
                sy = y;
                sx = x;
                break;
            }
    if (sy < 0) return;

    // Clockwise neighbor order (image coordinates, y down), starting W.
    static const int dy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
    static const int dx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
    auto fg = [&](int y, int x) { return y >= 0 && y < h && x >= 0 && x < w && mask.at(y, x); };

    auto dir_index = [&](int ddy, int ddx) {
        for (int i = 0; i < 8; ++i)
            if (dy[i] == ddy && dx[i] == ddx) return i;
        return 0;
    };

    int cy = sy, cx = sx;
    int backtrack = 0;  // came from the west, guaranteed background
    int first_move = -1;
    const std::int64_t step_limit = static_cast<std::int64_t>(h) * w * 4 + 8;
    for (std::int64_t steps = 0; steps < step_limit; ++steps) {
        int found = -1;
        int last_bg = backtrack;
        for (int i = 1; i <= 8; ++i) {
            const int d = (backtrack + i) % 8;
            if (fg(cy + dy[d], cx + dx[d])) {
                found = d;
                break;
            }
            last_bg = d;
        }
        if (found < 0) return;  // isolated pixel
        if (cy == sy && cx == sx) {
            if (first_move == found && steps > 0) return;  // closed the loop
            if (first_move < 0) first_move = found;
        }
        chain.push_back(found);
        const int by = cy + dy[last_bg];
        const int bx = cx + dx[last_bg];
        cy += dy[found];
        cx += dx[found];
        // Resume the clockwise sweep from the last background pixel seen,
        // which is always 8-adjacent to the new current pixel.
        backtrack = dir_index(by - cy, bx - cx);
    }
}

}  // namespace

double mask_roundness(const Mask& mask) {
    const std::int64_t area = mask.foreground_count();
    if (area <= 1) return 1.0;
    std::vector<int> chain;
    trace_boundary(mask, chain);
    if (chain.size() < 3) return 1.0;
    // Weighted chain-code estimate of the pre-digitization contour length
    // (Vossepoel-Smeulders step weights, no corner term: it over-corrects
    // on boundaries that curve at nearly every step, like small cells).
    std::int64_t axial = 0, diagonal = 0;
    for (const int d : chain) {
        if (d % 2 == 1)
            ++diagonal;
        else
            ++axial;
    }
    const double perimeter =
        0.980 * static_cast<double>(axial) + 1.406 * static_cast<double>(diagonal);
    return 4.0 * 3.14159265358979323846 * static_cast<double>(area) / (perimeter * perimeter);
}

double mask_aspect_ratio(const Mask& mask) {
    const std::int64_t n = mask.foreground_count();
    if (n == 0) return 1.0;
    double sx = 0, sy = 0;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(y, x)) {
                sx += x;
                sy += y;
            }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double mxx = 0, myy = 0, mxy = 0;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.at(y, x)) {
                const double dx = x - mx;
                const double dyv = y - my;
                mxx += dx * dx;
                myy += dyv * dyv;
                mxy += dx * dyv;
            }
    mxx /= static_cast<double>(n);
    myy /= static_cast<double>(n);
    mxy /= static_cast<double>(n);
    const double tr = mxx + myy;
    const double det = mxx * myy - mxy * mxy;
    const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
    const double l1 = tr / 2.0 + disc;
    const double l2 = tr / 2.0 - disc;
    if (l2 <= 1e-12) return 1.0;
    return std::sqrt(l1 / l2);
}

}  // namespace shapecell::imaging
