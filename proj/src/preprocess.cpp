#include "inkrep/preprocess.hpp"

#include <vector>

#include "inkrep/error.hpp"
#include "inkrep/simd/kernels.hpp"

namespace inkrep {

void PreprocessConfig::check() const {
    if (!(time_delta_ms > 0.0)) throw SchemaError("preprocess.time_delta_ms must be positive");
    if (grid_size < 2) throw SchemaError("preprocess.grid_size must be at least 2");
}

namespace {

Stroke resample_stroke(const Stroke& stroke, double delta) {
    if (stroke.size() < 2) return stroke;
    const double t_first = stroke.front().t;
    const double t_last = stroke.back().t;

    Stroke out;
    out.reserve(static_cast<std::size_t>((t_last - t_first) / delta) + 2);
    std::size_t seg = 0;  // stroke[seg].t <= sample time <= stroke[seg + 1].t
    for (std::size_t k = 0;; ++k) {
        const double t = t_first + static_cast<double>(k) * delta;
        if (t >= t_last) break;
        while (seg + 1 < stroke.size() - 1 && stroke[seg + 1].t <= t) ++seg;
        const Point& a = stroke[seg];
        const Point& b = stroke[seg + 1];
        const double span = b.t - a.t;
        if (span <= 0.0 || t <= a.t) {
            out.push_back({a.x, a.y, t});
            continue;
        }
        const double f = (t - a.t) / span;
        out.push_back({a.x + (b.x - a.x) * f, a.y + (b.y - a.y) * f, t});
    }
    out.push_back(stroke.back());
    return out;
}

}  // namespace

RawInk resample_time(const RawInk& ink, double delta_ms) {
    if (!(delta_ms > 0.0)) throw SchemaError("time delta must be positive");
    RawInk out;
    out.label = ink.label;
    out.metadata = ink.metadata;
    out.strokes.reserve(ink.strokes.size());
    for (const auto& stroke : ink.strokes) out.strokes.push_back(resample_stroke(stroke, delta_ms));
    return out;
}

RawInk normalize_scale(const RawInk& ink, int grid_size) {
    const std::size_t n = ink.point_count();
    RawInk out = ink;
    if (n == 0) return out;

    std::vector<double> xs;
    std::vector<double> ys;
    xs.reserve(n);
    ys.reserve(n);
    for (const auto& stroke : ink.strokes) {
        for (const auto& p : stroke) {
            xs.push_back(p.x);
            ys.push_back(p.y);
        }
    }

    const auto& k = simd::kernels();
    const simd::Bounds b = k.bounds(xs, ys);
    const double w = b.max_x - b.min_x;
    const double h = b.max_y - b.min_y;
    const double extent = w > h ? w : h;

    if (extent > 0.0) {
        const double target = static_cast<double>(grid_size);
        k.normalize(xs, b.min_x, extent, target);
        k.normalize(ys, b.min_y, extent, target);
    } else {
        std::fill(xs.begin(), xs.end(), 0.0);
        std::fill(ys.begin(), ys.end(), 0.0);
    }

    std::size_t i = 0;
    for (auto& stroke : out.strokes) {
        for (auto& p : stroke) {
            p.x = xs[i];
            p.y = ys[i];
            ++i;
        }
    }
    return out;
}

ProcessedInk quantize(const RawInk& normalized, const PreprocessConfig& config, QuantizeOptions options) {
    ProcessedInk out;
    out.grid_size = config.grid_size;
    out.time_delta_ms = config.time_delta_ms;
    out.strokes.reserve(normalized.strokes.size());

    const auto& k = simd::kernels();
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<int> qx;
    std::vector<int> qy;
    for (const auto& stroke : normalized.strokes) {
        xs.clear();
        ys.clear();
        for (const auto& p : stroke) {
            xs.push_back(p.x);
            ys.push_back(p.y);
        }
        qx.resize(xs.size());
        qy.resize(ys.size());
        k.round_half_away(xs, qx);
        k.round_half_away(ys, qy);

        GridStroke gs;
        gs.reserve(stroke.size());
        for (std::size_t i = 0; i < qx.size(); ++i) {
            GridPoint g{qx[i], qy[i]};
            if (options.collapse_duplicates && !gs.empty() && gs.back() == g) continue;
            gs.push_back(g);
        }
        out.strokes.push_back(std::move(gs));
    }
    return out;
}

ProcessedInk preprocess(const RawInk& ink, const PreprocessConfig& config) {
    config.check();
    return quantize(normalize_scale(resample_time(ink, config.time_delta_ms), config.grid_size), config);
}

}  // namespace inkrep
