#include "inkrep/png.hpp"

#include <zlib.h>

#include <array>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iterator>

#include "inkrep/error.hpp"

namespace inkrep {

namespace {

constexpr std::array<std::uint8_t, 8> kSignature = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) | p[3];
}

void put_chunk(std::vector<std::uint8_t>& out, const char (&type)[5], std::span<const std::uint8_t> data) {
    put_u32(out, static_cast<std::uint32_t>(data.size()));
    const std::size_t start = out.size();
    out.insert(out.end(), type, type + 4);
    out.insert(out.end(), data.begin(), data.end());
    uLong crc = crc32(0L, Z_NULL, 0);
    crc = crc32(crc, out.data() + start, static_cast<uInt>(out.size() - start));
    put_u32(out, static_cast<std::uint32_t>(crc));
}

std::uint8_t paeth(int a, int b, int c) {
    const int p = a + b - c;
    const int pa = std::abs(p - a);
    const int pb = std::abs(p - b);
    const int pc = std::abs(p - c);
    if (pa <= pb && pa <= pc) return static_cast<std::uint8_t>(a);
    if (pb <= pc) return static_cast<std::uint8_t>(b);
    return static_cast<std::uint8_t>(c);
}

}  // namespace

std::vector<std::uint8_t> encode_png(const RgbImage& image) {
    if (image.width <= 0 || image.height <= 0) throw Error("png: empty image");
    const std::size_t stride = static_cast<std::size_t>(image.width) * 3;
    std::vector<std::uint8_t> raw;
    raw.reserve((stride + 1) * static_cast<std::size_t>(image.height));
    for (int y = 0; y < image.height; ++y) {
        raw.push_back(0);
        const auto* row = image.pixels.data() + static_cast<std::size_t>(y) * stride;
        raw.insert(raw.end(), row, row + stride);
    }

    uLongf packed_size = compressBound(static_cast<uLong>(raw.size()));
    std::vector<std::uint8_t> packed(packed_size);
    if (compress2(packed.data(), &packed_size, raw.data(), static_cast<uLong>(raw.size()), 6) != Z_OK)
        throw Error("png: deflate failed");
    packed.resize(packed_size);

    std::vector<std::uint8_t> out(kSignature.begin(), kSignature.end());
    std::vector<std::uint8_t> ihdr;
    put_u32(ihdr, static_cast<std::uint32_t>(image.width));
    put_u32(ihdr, static_cast<std::uint32_t>(image.height));
    ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});  // depth 8, RGB, deflate, filter 0, no interlace
    put_chunk(out, "IHDR", ihdr);
    put_chunk(out, "IDAT", packed);
    put_chunk(out, "IEND", {});
    return out;
}

RgbImage decode_png(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 8 || !std::equal(kSignature.begin(), kSignature.end(), bytes.begin()))
        throw ParseError(ParseError::Unit::Byte, 0, "png: bad signature");
    std::size_t pos = 8;
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> packed;
    bool seen_header = false;
    while (pos + 12 <= bytes.size()) {
        const std::uint32_t len = get_u32(&bytes[pos]);
        if (pos + 12 + len > bytes.size()) throw ParseError(ParseError::Unit::Byte, pos, "png: truncated chunk");
        const std::string type(reinterpret_cast<const char*>(&bytes[pos + 4]), 4);
        const std::uint8_t* data = &bytes[pos + 8];
        uLong crc = crc32(0L, Z_NULL, 0);
        crc = crc32(crc, &bytes[pos + 4], len + 4);
        if (crc != get_u32(data + len)) throw ParseError(ParseError::Unit::Byte, pos, "png: CRC mismatch");
        if (type == "IHDR") {
            if (len != 13) throw ParseError(ParseError::Unit::Byte, pos, "png: bad IHDR");
            width = static_cast<int>(get_u32(data));
            height = static_cast<int>(get_u32(data + 4));
            if (data[8] != 8 || data[9] != 2 || data[12] != 0)
                throw ParseError(ParseError::Unit::Byte, pos, "png: only 8-bit RGB non-interlaced is supported");
            seen_header = true;
        } else if (type == "IDAT") {
            packed.insert(packed.end(), data, data + len);
        } else if (type == "IEND") {
            break;
        }
        pos += 12 + len;
    }
    if (!seen_header || width <= 0 || height <= 0) throw ParseError(ParseError::Unit::Byte, 8, "png: missing IHDR");

    const std::size_t stride = static_cast<std::size_t>(width) * 3;
    std::vector<std::uint8_t> raw((stride + 1) * static_cast<std::size_t>(height));
    uLongf raw_size = static_cast<uLongf>(raw.size());
    if (uncompress(raw.data(), &raw_size, packed.data(), static_cast<uLong>(packed.size())) != Z_OK ||
        raw_size != raw.size())
        throw ParseError(ParseError::Unit::Byte, 8, "png: bad image data");

    RgbImage img(width, height, 0);
    std::vector<std::uint8_t> prev(stride, 0);
    for (int y = 0; y < height; ++y) {
        const std::uint8_t filter = raw[static_cast<std::size_t>(y) * (stride + 1)];
        const std::uint8_t* in = &raw[static_cast<std::size_t>(y) * (stride + 1) + 1];
        std::uint8_t* out = img.pixels.data() + static_cast<std::size_t>(y) * stride;
        for (std::size_t i = 0; i < stride; ++i) {
            const int a = i >= 3 ? out[i - 3] : 0;
            const int b = prev[i];
            const int c = i >= 3 ? prev[i - 3] : 0;
            int v = in[i];
            switch (filter) {
                case 0: break;
                case 1: v += a; break;
                case 2: v += b; break;
                case 3: v += (a + b) / 2; break;
                case 4: v += paeth(a, b, c); break;
                default: throw ParseError(ParseError::Unit::Byte, 8, "png: unknown filter type");
            }
            out[i] = static_cast<std::uint8_t>(v);
        }
        std::memcpy(prev.data(), out, stride);
    }
    return img;
}

void write_png(const RgbImage& image, const std::filesystem::path& path) {
    const auto bytes = encode_png(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failure on " + path.string());
}

RgbImage read_png(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_png(bytes);
}

}  // namespace inkrep
