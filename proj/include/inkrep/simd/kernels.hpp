#pragma once

// Data-parallel inner loops of the preprocessing pipeline. Every kernel has a
// scalar reference in `scalar::` and optional vector variants; the active
// table is picked once at startup from the CPU features and can be forced
// with INKREP_SIMD=scalar|avx2 or set_backend(). All variants must produce
// bit-identical results.

#include <span>
#include <string_view>

namespace inkrep::simd {

struct Bounds {
    double min_x;
    double max_x;
    double min_y;
    double max_y;
};

enum class Backend { Scalar, Avx2 };

struct KernelTable {
    Backend backend;
    /// Bounding box of (xs[i], ys[i]). Requires xs.size() == ys.size() > 0.
    Bounds (*bounds)(std::span<const double> xs, std::span<const double> ys);
    /// values[i] = (values[i] - origin) / extent * target, in that order.
    void (*normalize)(std::span<double> values, double origin, double extent, double target);
    /// out[i] = values[i] rounded to nearest, ties away from zero. Inputs must
    /// fit in int.
    void (*round_half_away)(std::span<const double> values, std::span<int> out);
};

namespace scalar {
Bounds bounds(std::span<const double> xs, std::span<const double> ys);
void normalize(std::span<double> values, double origin, double extent, double target);
void round_half_away(std::span<const double> values, std::span<int> out);
}  // namespace scalar

namespace avx2 {
Bounds bounds(std::span<const double> xs, std::span<const double> ys);
void normalize(std::span<double> values, double origin, double extent, double target);
void round_half_away(std::span<const double> values, std::span<int> out);
}  // namespace avx2

/// Kernel table for the active backend.
const KernelTable& kernels();

const KernelTable& table_for(Backend backend);
bool backend_available(Backend backend);
Backend active_backend();

/// Overrides the active backend; falls back to scalar if unavailable.
/// Not thread-safe with concurrent kernel use; meant for tests and startup.
void set_backend(Backend backend);

std::string_view backend_name(Backend backend);

}  // namespace inkrep::simd
