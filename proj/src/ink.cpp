#include "inkrep/ink.hpp"

#include <cmath>
#include <string>

namespace inkrep {

std::size_t RawInk::point_count() const {
    std::size_t n = 0;
    for (const auto& s : strokes) n += s.size();
    return n;
}

std::string RawInk::id() const {
    auto it = metadata.find("id");
    return it == metadata.end() ? std::string{} : it->second;
}

std::size_t ProcessedInk::point_count() const {
    std::size_t n = 0;
    for (const auto& s : strokes) n += s.size();
    return n;
}

std::vector<std::string> validate(const RawInk& ink) {
    std::vector<std::string> out;
    if (ink.strokes.empty()) {
        out.emplace_back("empty ink");
        return out;
    }
    for (std::size_t s = 0; s < ink.strokes.size(); ++s) {
        const auto& stroke = ink.strokes[s];
        const std::string where = "stroke " + std::to_string(s);
        if (stroke.empty()) {
            out.push_back(where + ": empty stroke");
            continue;
        }
        for (std::size_t p = 0; p < stroke.size(); ++p) {
            const Point& pt = stroke[p];
            const std::string at = where + ", point " + std::to_string(p);
            if (!std::isfinite(pt.x) || !std::isfinite(pt.y) || !std::isfinite(pt.t)) {
                out.push_back(at + ": non-finite value");
                continue;
            }
            if (pt.t < 0.0) out.push_back(at + ": negative time");
            if (p > 0 && pt.t < stroke[p - 1].t) out.push_back(at + ": non-monotonic time");
        }
    }
    return out;
}

std::vector<std::string> validate(const ProcessedInk& ink) {
    std::vector<std::string> out;
    if (ink.grid_size < 2) out.push_back("grid size must be at least 2");
    if (!(ink.time_delta_ms > 0.0)) out.push_back("time delta must be positive");
    if (ink.strokes.empty()) {
        out.emplace_back("empty ink");
        return out;
    }
    for (std::size_t s = 0; s < ink.strokes.size(); ++s) {
        const auto& stroke = ink.strokes[s];
        if (stroke.empty()) {
            out.push_back("stroke " + std::to_string(s) + ": empty stroke");
            continue;
        }
        for (std::size_t p = 0; p < stroke.size(); ++p) {
            const auto [x, y] = stroke[p];
            if (x < 0 || y < 0 || x > ink.grid_size || y > ink.grid_size) {
                out.push_back("stroke " + std::to_string(s) + ", point " + std::to_string(p) +
                              ": coordinate outside [0, " + std::to_string(ink.grid_size) + "]");
            }
        }
    }
    return out;
}

}  // namespace inkrep
