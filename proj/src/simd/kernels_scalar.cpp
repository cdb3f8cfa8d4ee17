#include <algorithm>
#include <cmath>

#include "inkrep/simd/kernels.hpp"

namespace inkrep::simd::scalar {

Bounds bounds(std::span<const double> xs, std::span<const double> ys) {
    Bounds b{xs[0], xs[0], ys[0], ys[0]};
    for (std::size_t i = 1; i < xs.size(); ++i) {
        b.min_x = std::min(b.min_x, xs[i]);
        b.max_x = std::max(b.max_x, xs[i]);
        b.min_y = std::min(b.min_y, ys[i]);
        b.max_y = std::max(b.max_y, ys[i]);
    }
    return b;
}

void normalize(std::span<double> values, double origin, double extent, double target) {
    for (double& v : values) v = (v - origin) / extent * target;
}

void round_half_away(std::span<const double> values, std::span<int> out) {
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = static_cast<int>(std::round(values[i]));
}

}  // namespace inkrep::simd::scalar
