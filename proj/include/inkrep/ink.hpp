#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace inkrep {

/// One captured sample. Screen coordinates are y-down (origin top-left);
/// `t` is milliseconds since the first point of the ink.
struct Point {
    double x = 0.0;
    double y = 0.0;
    double t = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// A pen-down trajectory. Non-empty, timestamps non-decreasing.
using Stroke = std::vector<Point>;

/// Ink as captured by a device. Stroke order is the writing order; the list
/// order is authoritative even when device clocks reset between strokes.
struct RawInk {
    std::vector<Stroke> strokes;
    std::optional<std::string> label;
    std::map<std::string, std::string> metadata;

    std::size_t point_count() const;

    /// Value of metadata["id"], or an empty string.
    std::string id() const;

    friend bool operator==(const RawInk&, const RawInk&) = default;
};

/// Integer point on the [0, N] grid.
struct GridPoint {
    int x = 0;
    int y = 0;

    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

using GridStroke = std::vector<GridPoint>;

/// Resampled, scale-normalized and rounded ink. Points within a stroke are
/// `time_delta_ms` apart, so time is implicit.
struct ProcessedInk {
    std::vector<GridStroke> strokes;
    int grid_size = 224;
    double time_delta_ms = 20.0;

    std::size_t point_count() const;

    friend bool operator==(const ProcessedInk&, const ProcessedInk&) = default;
};

/// Checks the RawInk invariants. Returns one human-readable entry per broken
/// rule, naming the stroke and point index; empty means valid.
std::vector<std::string> validate(const RawInk& ink);

/// Checks the ProcessedInk invariants (non-empty strokes, coordinates in
/// [0, grid_size]).
std::vector<std::string> validate(const ProcessedInk& ink);

}  // namespace inkrep
