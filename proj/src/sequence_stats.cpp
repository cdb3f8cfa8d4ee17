#include "inkrep/sequence_stats.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstdio>

#include <json.hpp>

#include "inkrep/error.hpp"
#include "inkrep/parallel.hpp"

namespace inkrep {

std::size_t whitespace_token_count(std::string_view text) {
    std::size_t n = 0;
    bool in_token = false;
    for (char c : text) {
        const bool ws = std::isspace(static_cast<unsigned char>(c)) != 0;
        if (!ws && !in_token) ++n;
        in_token = !ws;
    }
    return n;
}

double median(std::vector<double> values) {
    if (values.empty()) return 0.0;
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, r.ptr);
}

const char* const kStageNames[] = {"Original x,y,t", "+Time sampling", "+Scale normalization",
                                   "+Extended token dictionary"};

}  // namespace

std::string raw_sequence_text(const RawInk& ink, std::string_view separator, bool with_time) {
    std::string out;
    for (const auto& stroke : ink.strokes) {
        if (!out.empty()) out += ' ';
        out += separator;
        for (const auto& p : stroke) {
            out += ' ';
            append_number(out, p.x);
            out += ' ';
            append_number(out, p.y);
            if (with_time) {
                out += ' ';
                append_number(out, p.t);
            }
        }
    }
    return out;
}

SequenceStats sequence_stats(std::span<const RawInk> corpus, const PreprocessConfig& preprocess,
                             const TokenizerConfig& tokenizer, const TokenCounter& counter) {
    if (corpus.empty()) throw SchemaError("empty corpus");
    if (tokenizer.mode == CoordinateMode::Histogram)
        throw SchemaError("sequence statistics need the absolute or relative tokenizer");
    preprocess.check();
    tokenizer.check();

    constexpr std::size_t kStages = 4;
    std::vector<std::array<double, kStages>> points(corpus.size());
    std::vector<std::array<double, kStages>> tokens(corpus.size());

    TokenizerConfig text_cfg = tokenizer;
    text_cfg.emission = Emission::Text;
    TokenizerConfig index_cfg = tokenizer;
    index_cfg.emission = Emission::ExtendedIndex;
    index_cfg.grid_size = preprocess.grid_size;

    parallel_for(corpus.size(), [&](std::size_t i) {
        const RawInk& ink = corpus[i];
        const RawInk resampled = resample_time(ink, preprocess.time_delta_ms);
        // Rounding only: the point count stays that of the resampled ink.
        const ProcessedInk grid =
            quantize(normalize_scale(resampled, preprocess.grid_size), preprocess, QuantizeOptions{false});

        points[i][0] = static_cast<double>(ink.point_count());
        tokens[i][0] = static_cast<double>(counter(raw_sequence_text(ink, tokenizer.stroke_separator, true)));
        points[i][1] = static_cast<double>(resampled.point_count());
        tokens[i][1] = static_cast<double>(counter(raw_sequence_text(resampled, tokenizer.stroke_separator, false)));
        points[i][2] = static_cast<double>(grid.point_count());
        tokens[i][2] = static_cast<double>(counter(tokenize(grid, text_cfg).text));
        points[i][3] = points[i][2];
        tokens[i][3] = static_cast<double>(tokenize(grid, index_cfg).indices.size());
    });

    SequenceStats stats;
    stats.ink_count = corpus.size();
    for (std::size_t s = 0; s < kStages; ++s) {
        std::vector<double> p(corpus.size());
        std::vector<double> t(corpus.size());
        for (std::size_t i = 0; i < corpus.size(); ++i) {
            p[i] = points[i][s];
            t[i] = tokens[i][s];
        }
        stats.rows.push_back({kStageNames[s], median(std::move(p)), median(std::move(t))});
    }
    return stats;
}

std::string SequenceStats::to_table() const {
    std::string out;
    char line[128];
    std::snprintf(line, sizeof line, "%-28s %10s %10s\n", "Representation", "# Points", "# Tokens");
    out += line;
    for (const auto& row : rows) {
        std::snprintf(line, sizeof line, "%-28s %10.1f %10.1f\n", row.name.c_str(), row.median_points,
                      row.median_tokens);
        out += line;
    }
    return out;
}

std::string SequenceStats::to_json() const {
    nlohmann::json j;
    j["ink_count"] = ink_count;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows)
        j["rows"].push_back({{"stage", row.name}, {"median_points", row.median_points},
                             {"median_tokens", row.median_tokens}});
    return j.dump(2);
}

}  // namespace inkrep
