#include "inkrep/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "inkrep/error.hpp"
#include "inkrep/parallel.hpp"

namespace inkrep {

std::string_view to_string(ColorMode mode) {
    switch (mode) {
        case ColorMode::BlackWhite: return "bw";
        case ColorMode::Time: return "time";
        case ColorMode::TimeDistance: return "time_distance";
    }
    return "?";
}

ColorMode parse_color_mode(std::string_view name) {
    if (name == "bw") return ColorMode::BlackWhite;
    if (name == "time") return ColorMode::Time;
    if (name == "time_distance") return ColorMode::TimeDistance;
    throw SchemaError("unknown color mode '" + std::string(name) + "'");
}

void RenderConfig::check() const {
    if (image_size < 1) throw SchemaError("render.image_size must be positive");
    if (line_count < 1) throw SchemaError("render.line_count must be positive");
    if (image_size % line_count != 0) throw SchemaError("render.image_size must be divisible by render.line_count");
    if (stroke_width < 1) throw SchemaError("render.stroke_width must be at least 1");
    if (margin < 0) throw SchemaError("render.margin must be non-negative");
    if (image_size / line_count - 2 * margin < 1) throw SchemaError("render.margin leaves no room to draw");
}

std::vector<std::vector<PointChannels>> point_channels(const RawInk& ink) {
    std::vector<std::vector<PointChannels>> out(ink.strokes.size());
    if (ink.strokes.empty() || ink.strokes.front().empty()) return out;

    const double t0 = ink.strokes.front().front().t;
    double max_t = 0.0;
    double max_dx = 0.0;
    double max_dy = 0.0;
    for (const auto& stroke : ink.strokes) {
        for (std::size_t j = 0; j < stroke.size(); ++j) {
            max_t = std::max(max_t, stroke[j].t - t0);
            if (j + 1 < stroke.size()) {
                max_dx = std::max(max_dx, std::abs(stroke[j + 1].x - stroke[j].x));
                max_dy = std::max(max_dy, std::abs(stroke[j + 1].y - stroke[j].y));
            }
        }
    }
    const double t_den = max_t > 0.0 ? max_t : 1.0;
    const double x_den = max_dx > 0.0 ? max_dx : 1.0;
    const double y_den = max_dy > 0.0 ? max_dy : 1.0;

    for (std::size_t i = 0; i < ink.strokes.size(); ++i) {
        const auto& stroke = ink.strokes[i];
        auto& ch = out[i];
        ch.resize(stroke.size());
        for (std::size_t j = 0; j < stroke.size(); ++j) {
            ch[j].red = max_t > 0.0 ? std::clamp((stroke[j].t - t0) / t_den, 0.0, 1.0) : 0.0;
            if (j + 1 < stroke.size()) {
                ch[j].green = std::abs(stroke[j + 1].x - stroke[j].x) / x_den;
                ch[j].blue = std::abs(stroke[j + 1].y - stroke[j].y) / y_den;
            } else if (j > 0) {
                ch[j].green = ch[j - 1].green;
                ch[j].blue = ch[j - 1].blue;
            }
        }
    }
    return out;
}

namespace {

std::uint8_t to_byte(double c) { return static_cast<std::uint8_t>(std::lround(std::clamp(c, 0.0, 1.0) * 255.0)); }

Rgb color_for(const PointChannels& c, ColorMode mode) {
    switch (mode) {
        case ColorMode::BlackWhite: return {0, 0, 0};
        case ColorMode::Time: return {to_byte(c.red), 0, 0};
        case ColorMode::TimeDistance: return {to_byte(c.red), to_byte(c.green), to_byte(c.blue)};
    }
    return {};
}

struct StripLayout {
    int strip_width;
    int strip_height;
    double scale;
    double min_x;
    double min_y;
    int margin;

    int px(double x) const { return margin + static_cast<int>(std::lround((x - min_x) * scale)); }
    int py(double y) const { return margin + static_cast<int>(std::lround((y - min_y) * scale)); }
};

StripLayout layout_for(const RawInk& ink, const RenderConfig& cfg) {
    StripLayout l{};
    l.strip_height = cfg.image_size / cfg.line_count;
    l.strip_width = cfg.image_size * cfg.line_count;
    l.margin = cfg.margin;
    double min_x = std::numeric_limits<double>::infinity();
    double min_y = min_x;
    double max_x = -min_x;
    double max_y = -min_x;
    for (const auto& stroke : ink.strokes) {
        for (const auto& p : stroke) {
            min_x = std::min(min_x, p.x);
            max_x = std::max(max_x, p.x);
            min_y = std::min(min_y, p.y);
            max_y = std::max(max_y, p.y);
        }
    }
    l.min_x = min_x;
    l.min_y = min_y;
    const double avail_w = l.strip_width - 1 - 2 * cfg.margin;
    const double avail_h = l.strip_height - 1 - 2 * cfg.margin;
    const double w = max_x - min_x;
    const double h = max_y - min_y;
    double scale = std::numeric_limits<double>::infinity();
    if (w > 0.0) scale = std::min(scale, avail_w / w);
    if (h > 0.0) scale = std::min(scale, avail_h / h);
    l.scale = std::isfinite(scale) ? scale : 0.0;
    return l;
}

class Canvas {
public:
    Canvas(const RenderConfig& cfg, int strip_width, int strip_height)
        : image_(cfg.image_size, cfg.image_size, 255),
          line_width_(cfg.image_size),
          strip_w_(strip_width),
          strip_h_(strip_height),
          lo_(-(cfg.stroke_width - 1) / 2),
          hi_(cfg.stroke_width / 2) {}

    void stamp(int sx, int sy, Rgb c) {
        for (int dy = lo_; dy <= hi_; ++dy)
            for (int dx = lo_; dx <= hi_; ++dx) put(sx + dx, sy + dy, c);
    }

    void line(int x0, int y0, int x1, int y1, Rgb c) {
        const int dx = std::abs(x1 - x0);
        const int dy = -std::abs(y1 - y0);
        const int step_x = x0 < x1 ? 1 : -1;
        const int step_y = y0 < y1 ? 1 : -1;
        int err = dx + dy;
        for (;;) {
            stamp(x0, y0, c);
            if (x0 == x1 && y0 == y1) break;
            const int e2 = 2 * err;
            if (e2 >= dy) {
                err += dy;
                x0 += step_x;
            }
            if (e2 <= dx) {
                err += dx;
                y0 += step_y;
            }
        }
    }

    RgbImage take() { return std::move(image_); }

private:
    // Strip pixel -> output pixel: the strip is cut every line_width_ columns
    // and the pieces are stacked top to bottom.
    void put(int sx, int sy, Rgb c) {
        if (sx < 0 || sy < 0 || sx >= strip_w_ || sy >= strip_h_) return;
        const int line = sx / line_width_;
        std::uint8_t* p = image_.at(sx - line * line_width_, line * strip_h_ + sy);
        p[0] = c.r;
        p[1] = c.g;
        p[2] = c.b;
    }

    RgbImage image_;
    int line_width_;
    int strip_w_;
    int strip_h_;
    int lo_;
    int hi_;
};

}  // namespace

std::vector<DrawSegment> plan_segments(const RawInk& ink, const RenderConfig& config) {
    config.check();
    std::vector<DrawSegment> out;
    if (ink.point_count() == 0) return out;
    const StripLayout l = layout_for(ink, config);
    const auto channels = point_channels(ink);
    for (std::size_t i = 0; i < ink.strokes.size(); ++i) {
        const auto& stroke = ink.strokes[i];
        if (stroke.empty()) continue;
        for (std::size_t j = 0; j + 1 < stroke.size(); ++j) {
            out.push_back({l.px(stroke[j].x), l.py(stroke[j].y), l.px(stroke[j + 1].x), l.py(stroke[j + 1].y),
                           color_for(channels[i][j], config.color_mode), i});
        }
        const Point& last = stroke.back();
        out.push_back({l.px(last.x), l.py(last.y), l.px(last.x), l.py(last.y),
                       color_for(channels[i].back(), config.color_mode), i});
    }
    return out;
}

RenderedImage render(const RawInk& ink, const RenderConfig& config) {
    config.check();
    const StripLayout l = layout_for(ink, config);
    Canvas canvas(config, l.strip_width, l.strip_height);
    for (const auto& s : plan_segments(ink, config)) canvas.line(s.x0, s.y0, s.x1, s.y1, s.color);
    return {canvas.take(), config};
}

std::string image_file_name(const std::string& id, std::size_t index, std::set<std::string>& taken) {
    std::string base;
    for (char c : id) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '-' ||
                        c == '_' || c == '.';
        base += ok ? c : '_';
    }
    if (base.empty() || base.find_first_not_of('.') == std::string::npos) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "ink_%06zu", index);
        base = buf;
    }
    std::string name = base + ".png";
    if (taken.contains(name)) name = base + "_" + std::to_string(index) + ".png";
    taken.insert(name);
    return name;
}

RenderBatchResult render_batch(std::span<const RawInk> corpus, const RenderConfig& config,
                               const std::filesystem::path& out_dir) {
    config.check();
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir.string() + ": " + ec.message());

    std::vector<std::string> names(corpus.size());
    std::vector<std::string> ids(corpus.size());
    std::set<std::string> taken;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        ids[i] = corpus[i].id();
        if (ids[i].empty()) ids[i] = "ink_" + std::to_string(i);
        names[i] = image_file_name(corpus[i].id(), i, taken);
    }

    std::vector<std::string> errors(corpus.size());
    parallel_for(corpus.size(), [&](std::size_t i) {
        try {
            write_png(render(corpus[i], config).image, out_dir / names[i]);
        } catch (const std::exception& e) {
            errors[i] = ids[i] + ": " + e.what();
        }
    });

    RenderBatchResult result;
    std::ofstream manifest(out_dir / "manifest.jsonl", std::ios::binary | std::ios::trunc);
    if (!manifest) throw IoError("cannot write " + (out_dir / "manifest.jsonl").string());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        if (!errors[i].empty()) {
            result.errors.push_back(errors[i]);
            continue;
        }
        result.manifest.push_back({ids[i], names[i]});
        manifest << nlohmann::json{{"id", ids[i]}, {"path", names[i]}}.dump() << '\n';
    }
    return result;
}

}  // namespace inkrep
