#include "shapecell/data/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "shapecell/errors.hpp"
#include "shapecell/imaging/png_io.hpp"

namespace shapecell::data {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kFieldOfViewUm = 26.0;  // canvas width in microns
// Few enough vertices that the 5% contour noise lands at a low spatial
// frequency and survives downscaling; dense vertices would read as a
// smooth circle at training resolution.
constexpr int kRoughVertices = 20;

struct Bud {
    double x, y, r;
};

struct CellGeometry {
    double cx, cy;       // center
    double a, b;         // ellipse semi-axes (a >= b; a == b for round styles)
    double cphi, sphi;   // rotation of the major axis
    std::vector<Bud> buds;
    std::vector<double> rough;  // per-vertex radius, empty unless rough style

    // Positive inside; approximates distance to the boundary in pixels,
    // good enough for a one-pixel soft edge.
    double slack(double px, double py) const {
        const double dx = px - cx, dy = py - cy;
        double best;
        if (!rough.empty()) {
            const double rp = std::hypot(dx, dy);
            double theta = std::atan2(dy, dx);
            if (theta < 0) theta += 2 * kPi;
            const double step = 2 * kPi / static_cast<double>(rough.size());
            const auto k = static_cast<std::size_t>(theta / step) % rough.size();
            const double f = theta / step - std::floor(theta / step);
            const double rho = rough[k] * (1 - f) + rough[(k + 1) % rough.size()] * f;
            best = rho - rp;
        } else {
            const double u = dx * cphi + dy * sphi;
            const double v = -dx * sphi + dy * cphi;
            const double f = std::sqrt((u / a) * (u / a) + (v / b) * (v / b));
            best = (1.0 - f) * b;
        }
        for (const auto& bud : buds)
            best = std::max(best, bud.r - std::hypot(px - bud.x, py - bud.y));
        return best;
    }
};

// Half-pixel antialiased edge; coverage 0.5 exactly at the contour, so a
// threshold that lands mid-edge cuts where the truth mask does.
float soft(double slack) { return static_cast<float>(std::clamp(2.0 * slack + 0.5, 0.0, 1.0)); }

void blend(imaging::Image& img, int y, int x, const std::array<float, 3>& color, float cov) {
    if (cov <= 0) return;
    for (int c = 0; c < 3; ++c)
        img.at(y, x, c) = img.at(y, x, c) * (1.0f - cov) + color[c] * cov;
}

}  // namespace

std::vector<SyntheticCellSpec> default_cell_specs() {
    // The four palettes share the same min (green) and max (blue) channels,
    // differing only in red, which stays strictly between the two. Every
    // class therefore maps to the same level in the segmentation pipeline's
    // V map while the rendered colors still drift apart slightly -- far
    // less than the per-image stain jitter, so color alone is a weak cue.
    // Nucleus-to-cell ratio declines monotonically with maturation. The
    // per-stage ranges barely touch, so the ratio is an ordinal cue that the
    // mask stack exposes directly, while contour style stays the cue that
    // separates neighbours whose sizes overlap.
    return {
        {"Pro", 15, 20, ContourStyle::elliptical_protrusions, 0.72, 0.85,
         {0.58f, 0.55f, 0.74f}, {0.33f, 0.255f, 0.49f}},
        {"Bas", 10, 18, ContourStyle::round_protrusions, 0.60, 0.74,
         {0.60f, 0.55f, 0.74f}, {0.30f, 0.255f, 0.49f}},
        {"Pol", 8, 15, ContourStyle::round_rough, 0.48, 0.60,
         {0.62f, 0.55f, 0.74f}, {0.32f, 0.255f, 0.49f}},
        {"Ort", 7, 10, ContourStyle::round_smooth, 0.34, 0.46,
         {0.64f, 0.55f, 0.74f}, {0.34f, 0.255f, 0.49f}},
    };
}

SyntheticCell synthesize_cell(const SyntheticCellSpec& spec, Rng& rng, int image_size) {
    const int S = image_size;
    const double px_per_um = S / kFieldOfViewUm;
    const double max_extent = 0.5 * spec.diameter_um_max * px_per_um * 1.15;
    if (max_extent > S / 2.0 - 2.0)
        throw InvalidInputError("image size " + std::to_string(S) +
                                " too small for cells up to " +
                                std::to_string(spec.diameter_um_max) + " um");

    CellGeometry g;
    const double r = 0.5 * rng.uniform(spec.diameter_um_min, spec.diameter_um_max) * px_per_um;
    g.cx = S / 2.0 + rng.uniform(-2.0, 2.0);
    g.cy = S / 2.0 + rng.uniform(-2.0, 2.0);
    if (spec.style == ContourStyle::elliptical_protrusions) {
        const double q = rng.uniform(0.50, 0.78);
        const double phi = rng.uniform(0.0, kPi);
        g.a = r;
        g.b = r * q;
        g.cphi = std::cos(phi);
        g.sphi = std::sin(phi);
    } else {
        g.a = g.b = r;
        g.cphi = 1.0;
        g.sphi = 0.0;
    }
    if (spec.style == ContourStyle::elliptical_protrusions ||
        spec.style == ContourStyle::round_protrusions) {
        // 2-5 bumps of 10-20% of the cell radius. Rounder elliptical bases
        // need more boundary to look ragged, so bump count and size grow
        // with the axis ratio while staying inside those ranges.
        int n_buds;
        double size_lo, size_hi;
        if (spec.style == ContourStyle::elliptical_protrusions) {
            const double need = std::clamp((g.b / g.a - 0.50) / 0.28, 0.0, 1.0);
            n_buds = 2 + static_cast<int>(std::lround(3.0 * need));
            const double mid = 0.11 + 0.08 * need;
            size_lo = std::max(0.10, mid - 0.01);
            size_hi = std::min(0.20, mid + 0.01);
        } else {
            // Bas sits at the top of the allowed count/size ranges so its
            // buds stay visible at training resolution, where they are the
            // only cue separating it from the rough-contoured class.
            n_buds = static_cast<int>(rng.uniform_int(4, 5));
            size_lo = 0.15;
            size_hi = 0.20;
        }
        const double base = rng.uniform(0.0, 2 * kPi);
        for (int i = 0; i < n_buds; ++i) {
            const double t = base + i * 2 * kPi / n_buds +
                             rng.uniform(-0.3, 0.3) * kPi / n_buds;
            const double br = rng.uniform(size_lo, size_hi) * r;
            // Boundary point of the (rotated) ellipse at parameter t, with
            // the bud sunk slightly so a neck forms instead of a tangency.
            const double ex = g.a * std::cos(t), ey = g.b * std::sin(t);
            double bx = g.cx + ex * g.cphi - ey * g.sphi;
            double by = g.cy + ex * g.sphi + ey * g.cphi;
            const double dist = std::hypot(bx - g.cx, by - g.cy);
            const double sink = 0.15 * br;
            bx = g.cx + (bx - g.cx) * (dist - sink) / dist;
            by = g.cy + (by - g.cy) * (dist - sink) / dist;
            g.buds.push_back({bx, by, br});
        }
    }
    if (spec.style == ContourStyle::round_rough) {
        g.rough.resize(kRoughVertices);
        for (auto& v : g.rough) v = r * (1.0 + rng.uniform(-0.05, 0.05));
    }

    const double ratio = rng.uniform(spec.nucleus_ratio_min, spec.nucleus_ratio_max);
    const double nr = ratio * std::sqrt(g.a * g.b);
    const double room = std::max(0.0, g.b - nr);
    const double nangle = rng.uniform(0.0, 2 * kPi);
    const double ndist = rng.uniform(0.0, 0.5 * room);
    const double nx = g.cx + ndist * std::cos(nangle);
    const double ny = g.cy + ndist * std::sin(nangle);

    // Palette: class palettes overlap, and the per-image stain draw moves
    // cytoplasm and nucleus together by more than any between-class shift.
    std::array<float, 3> bg{}, cyto{}, nuc{};
    const double bg_level = rng.uniform(-0.02, 0.02);
    for (int c = 0; c < 3; ++c)
        bg[c] = static_cast<float>(0.92 + bg_level + rng.uniform(-0.01, 0.01));
    const double stain = rng.uniform(-0.05, 0.05);
    for (int c = 0; c < 3; ++c)
        cyto[c] = static_cast<float>(spec.cyto_base[c] + stain + rng.uniform(-0.01, 0.01));
    for (int c = 0; c < 3; ++c)
        nuc[c] = static_cast<float>(spec.nucleus_base[c] + stain + rng.uniform(-0.01, 0.01));
    const double grad_angle = rng.uniform(0.0, 2 * kPi);
    const double gx = std::cos(grad_angle) * 0.035 / S, gy = std::sin(grad_angle) * 0.035 / S;

    struct Blob {
        double x, y, r;
        std::array<float, 3> color;
    };
    std::vector<Blob> blobs;
    const int n_blobs = static_cast<int>(rng.uniform_int(2, 6));
    for (int i = 0; i < n_blobs; ++i) {
        Blob blob;
        blob.x = rng.uniform(0.0, S);
        blob.y = rng.uniform(0.0, S);
        blob.r = rng.uniform(1.5, 4.5);
        const auto dark = static_cast<float>(rng.uniform(0.03, 0.09));
        for (int c = 0; c < 3; ++c) blob.color[c] = bg[c] - dark;
        blobs.push_back(blob);
    }

    SyntheticCell out;
    out.image = imaging::Image(S, S, 3);
    out.truth = imaging::Mask(S, S);
    out.label = 0;
    for (int y = 0; y < S; ++y)
        for (int x = 0; x < S; ++x) {
            const double px = x + 0.5, py = y + 0.5;
            for (int c = 0; c < 3; ++c)
                out.image.at(y, x, c) =
                    static_cast<float>(bg[c] + (px - S / 2.0) * gx + (py - S / 2.0) * gy);
            for (const auto& blob : blobs)
                blend(out.image, y, x, blob.color,
                      soft(blob.r - std::hypot(px - blob.x, py - blob.y)));
            const double cell_slack = g.slack(px, py);
            blend(out.image, y, x, cyto, soft(cell_slack));
            const double nslack = std::min(cell_slack, nr - std::hypot(px - nx, py - ny));
            blend(out.image, y, x, nuc, soft(nslack));
            if (cell_slack > 0) out.truth.set(y, x, true);
        }
    for (auto& v : out.image.data())
        v = std::clamp(v + static_cast<float>(rng.normal(0.0, 0.02)), 0.0f, 1.0f);
    return out;
}

void make_synthetic_dataset(const std::filesystem::path& out, int n_per_class,
                            std::uint64_t seed, int image_size) {
    if (n_per_class < 1) throw InvalidInputError("n_per_class must be >= 1");
    const auto specs = default_cell_specs();
    std::error_code ec;
    for (std::size_t ci = 0; ci < specs.size(); ++ci) {
        const auto& spec = specs[ci];
        const auto img_dir = out / spec.class_name;
        const auto mask_dir = out / "masks" / spec.class_name;
        std::filesystem::create_directories(img_dir, ec);
        std::filesystem::create_directories(mask_dir, ec);
        if (!std::filesystem::is_directory(img_dir) || !std::filesystem::is_directory(mask_dir))
            throw DataError("cannot create output directory under " + out.string());
        for (int i = 0; i < n_per_class; ++i) {
            Rng rng = Rng::seeded(seed, ci * 1000003ull + static_cast<std::uint64_t>(i));
            SyntheticCell cell = synthesize_cell(spec, rng, image_size);
            char name[64];
            std::snprintf(name, sizeof(name), "%s_%04d.png", spec.class_name.c_str(), i);
            imaging::write_png((img_dir / name).string(), cell.image);
            imaging::write_mask_png((mask_dir / name).string(), cell.truth);
        }
    }
}

}  // namespace shapecell::data
