#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inkrep/ink.hpp"
#include "inkrep/png.hpp"

namespace inkrep {

enum class ColorMode { BlackWhite, Time, TimeDistance };

std::string_view to_string(ColorMode mode);
ColorMode parse_color_mode(std::string_view name);  // "bw", "time", "time_distance"

struct RenderConfig {
    int image_size = 224;
    ColorMode color_mode = ColorMode::TimeDistance;
    /// The ink is laid out on a strip of line_count * image_size by
    /// image_size / line_count pixels, cut into line_count pieces and stacked.
    int line_count = 2;
    int stroke_width = 2;
    int margin = 2;

    void check() const;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// A straight piece of pen trajectory in strip pixel coordinates. Single
/// points are segments with equal ends.
struct DrawSegment {
    int x0, y0, x1, y1;
    Rgb color;
    std::size_t stroke;
};

/// Per-point channel values in [0, 1] before 8-bit scaling:
///   red   = (t - t_first) / max(t - t_first)
///   green = |dx| / max|dx|,  blue = |dy| / max|dy|
/// with dx, dy forward differences inside a stroke; the last point of a
/// stroke reuses its predecessor's green and blue. Zero denominators give 0.
struct PointChannels {
    double red = 0.0;
    double green = 0.0;
    double blue = 0.0;
};

std::vector<std::vector<PointChannels>> point_channels(const RawInk& ink);

/// Drawing order for `ink`: per stroke, one segment per consecutive point pair
/// colored by its starting point, then a dot at the stroke's final point in
/// that point's own color.
std::vector<DrawSegment> plan_segments(const RawInk& ink, const RenderConfig& config);

struct RenderedImage {
    RgbImage image;
    RenderConfig config;
};

/// Rasterizes a (resampled) ink into an image_size x image_size RGB image on
/// white, with integer Bresenham lines and a square brush; later segments
/// overwrite earlier ones.
RenderedImage render(const RawInk& ink, const RenderConfig& config);

struct ManifestEntry {
    std::string id;
    std::string path;  // relative to the output directory
};

struct RenderBatchResult {
    std::vector<ManifestEntry> manifest;  // input order, failed inks omitted
    std::vector<std::string> errors;
};

/// Deterministic file name for the index-th ink; ids are sanitized and
/// de-duplicated within `taken`.
std::string image_file_name(const std::string& id, std::size_t index, std::set<std::string>& taken);

/// Renders every ink to out_dir/<name>.png and writes out_dir/manifest.jsonl
/// with {"id", "path"} rows. Per-ink failures are collected, not thrown.
RenderBatchResult render_batch(std::span<const RawInk> corpus, const RenderConfig& config,
                               const std::filesystem::path& out_dir);

}  // namespace inkrep
