#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace inkrep {

/// 8-bit RGB raster, row-major, 3 bytes per pixel.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    RgbImage() = default;
    RgbImage(int w, int h, std::uint8_t fill = 255)
        : width(w), height(h), pixels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h) * 3, fill) {}

    std::uint8_t* at(int x, int y) { return &pixels[(static_cast<std::size_t>(y) * width + x) * 3]; }
    const std::uint8_t* at(int x, int y) const { return &pixels[(static_cast<std::size_t>(y) * width + x) * 3]; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Encodes as a non-interlaced 8-bit RGB PNG with filter type 0 and a fixed
/// zlib level, so identical images give identical bytes.
std::vector<std::uint8_t> encode_png(const RgbImage& image);

/// Decodes 8-bit RGB non-interlaced PNGs (all five filter types).
RgbImage decode_png(std::span<const std::uint8_t> bytes);

void write_png(const RgbImage& image, const std::filesystem::path& path);
RgbImage read_png(const std::filesystem::path& path);

}  // namespace inkrep
