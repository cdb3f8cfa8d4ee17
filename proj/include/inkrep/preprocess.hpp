#pragma once

#include "inkrep/ink.hpp"

namespace inkrep {

struct PreprocessConfig {
    double time_delta_ms = 20.0;
    int grid_size = 224;

    /// Throws SchemaError when time_delta_ms <= 0 or grid_size < 2.
    void check() const;
};

/// Resamples every stroke on a uniform time grid t_first + k * delta, linearly
/// interpolating x and y. The last original point of each stroke is always
/// kept so stroke endpoints do not move.
RawInk resample_time(const RawInk& ink, double delta_ms);

/// Aspect-preserving shift and scale so the larger bounding-box side spans
/// exactly [0, grid_size] and the minimum corner sits at the origin. A
/// single-point ink maps to (0, 0).
RawInk normalize_scale(const RawInk& ink, int grid_size);

struct QuantizeOptions {
    /// Drop consecutive points that round to the same grid cell.
    bool collapse_duplicates = true;
};

/// Rounds coordinates to the nearest integer (ties away from zero). Expects a
/// scale-normalized ink.
ProcessedInk quantize(const RawInk& normalized, const PreprocessConfig& config, QuantizeOptions options = {});

/// resample_time -> normalize_scale -> quantize.
ProcessedInk preprocess(const RawInk& ink, const PreprocessConfig& config);

}  // namespace inkrep
