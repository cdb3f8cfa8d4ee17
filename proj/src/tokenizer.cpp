#include "inkrep/tokenizer.hpp"

#include <cctype>
#include <charconv>

#include "inkrep/error.hpp"

namespace inkrep {

std::string_view to_string(CoordinateMode mode) {
    switch (mode) {
        case CoordinateMode::Absolute: return "absolute";
        case CoordinateMode::Relative: return "relative";
        case CoordinateMode::Histogram: return "histogram";
    }
    return "?";
}

std::string_view to_string(Emission emission) {
    return emission == Emission::Text ? "text" : "extended_index";
}

CoordinateMode parse_coordinate_mode(std::string_view name) {
    if (name == "absolute") return CoordinateMode::Absolute;
    if (name == "relative") return CoordinateMode::Relative;
    if (name == "histogram") return CoordinateMode::Histogram;
    throw SchemaError("unknown tokenizer mode '" + std::string(name) + "'");
}

Emission parse_emission(std::string_view name) {
    if (name == "text") return Emission::Text;
    if (name == "extended_index") return Emission::ExtendedIndex;
    throw SchemaError("unknown emission '" + std::string(name) + "'");
}

namespace {

bool parse_int(std::string_view tok, long long& value) {
    const char* first = tok.data();
    const char* last = tok.data() + tok.size();
    if (first != last && *first == '+') return false;
    auto r = std::from_chars(first, last, value);
    return r.ec == std::errc{} && r.ptr == last;
}

void append_int(std::string& out, long long v) {
    char buf[24];
    auto r = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, r.ptr);
}

// Shared emitter: the coordinate modes differ only in which values they emit.
class Emitter {
public:
    Emitter(const TokenizerConfig& config, CoordinateMode mode, int grid_size)
        : config_(config), mode_(mode), grid_(grid_size) {}

    void separator() {
        if (config_.emission == Emission::Text) {
            if (!seq_.text.empty()) seq_.text += ' ';
            seq_.text += config_.stroke_separator;
        } else {
            seq_.indices.push_back(extended_separator(mode_, grid_));
        }
    }

    void value(long long v) {
        if (config_.emission == Emission::Text) {
            seq_.text += ' ';
            append_int(seq_.text, v);
        } else {
            const long long shift = mode_ == CoordinateMode::Relative ? grid_ : 0;
            const long long idx = v + shift;
            if (idx < 0 || idx > shift + grid_)
                throw RangeError("value " + std::to_string(v) + " outside the extended-index range");
            seq_.indices.push_back(static_cast<std::uint32_t>(idx));
        }
    }

    TokenSequence take() {
        seq_.emission = config_.emission;
        return std::move(seq_);
    }

private:
    const TokenizerConfig& config_;
    CoordinateMode mode_;
    int grid_;
    TokenSequence seq_;
};

std::vector<RawToken> indices_to_tokens(std::span<const std::uint32_t> indices, CoordinateMode mode,
                                        int grid_size) {
    const std::uint32_t sep = extended_separator(mode, grid_size);
    const long long shift = mode == CoordinateMode::Relative ? grid_size : 0;
    std::vector<RawToken> out;
    out.reserve(indices.size());
    for (std::size_t i = 0; i < indices.size(); ++i) {
        const auto idx = indices[i];
        if (idx == sep) {
            out.push_back({true, 0});
        } else if (idx > sep) {
            throw ParseError(ParseError::Unit::Token, i, "index " + std::to_string(idx) + " out of range");
        } else {
            out.push_back({false, static_cast<long long>(idx) - shift});
        }
    }
    return out;
}

void require_coordinate_mode(CoordinateMode mode) {
    if (mode == CoordinateMode::Histogram)
        throw SchemaError("histogram mode needs a codebook; use the histogram tokenizer");
}

}  // namespace

void TokenizerConfig::check() const {
    if (stroke_separator.empty()) throw SchemaError("tokenizer.stroke_separator must not be empty");
    for (char c : stroke_separator)
        if (std::isspace(static_cast<unsigned char>(c)))
            throw SchemaError("tokenizer.stroke_separator must not contain whitespace");
    long long dummy = 0;
    if (parse_int(stroke_separator, dummy))
        throw SchemaError("tokenizer.stroke_separator must not be an integer");
    if (grid_size < 2) throw SchemaError("tokenizer.grid_size must be at least 2");
}

std::size_t TokenSequence::size() const {
    if (emission == Emission::ExtendedIndex) return indices.size();
    std::size_t n = 0;
    bool in_token = false;
    for (char c : text) {
        bool ws = std::isspace(static_cast<unsigned char>(c));
        if (!ws && !in_token) ++n;
        in_token = !ws;
    }
    return n;
}

std::uint32_t extended_separator(CoordinateMode mode, int grid_size) {
    require_coordinate_mode(mode);
    const auto n = static_cast<std::uint32_t>(grid_size);
    return mode == CoordinateMode::Relative ? 2 * n + 1 : n + 1;
}

std::vector<RawToken> lex_tokens(std::string_view text, std::string_view separator) {
    std::vector<RawToken> out;
    std::size_t i = 0;
    std::size_t index = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i == text.size()) break;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        std::string_view tok = text.substr(i, j - i);
        RawToken t;
        if (tok == separator) {
            t.separator = true;
        } else if (!parse_int(tok, t.value)) {
            throw ParseError(ParseError::Unit::Token, index, "unexpected token '" + std::string(tok) + "'");
        }
        out.push_back(t);
        ++index;
        i = j;
    }
    return out;
}

TokenSequence tokenize_absolute(const ProcessedInk& ink, const TokenizerConfig& config) {
    Emitter e(config, CoordinateMode::Absolute, ink.grid_size);
    for (const auto& stroke : ink.strokes) {
        e.separator();
        for (const auto& p : stroke) {
            e.value(p.x);
            e.value(p.y);
        }
    }
    return e.take();
}

TokenSequence tokenize_relative(const ProcessedInk& ink, const TokenizerConfig& config) {
    Emitter e(config, CoordinateMode::Relative, ink.grid_size);
    bool first = true;
    GridPoint prev{};
    for (const auto& stroke : ink.strokes) {
        e.separator();
        for (const auto& p : stroke) {
            if (first) {
                e.value(p.x);
                e.value(p.y);
                first = false;
            } else {
                e.value(p.x - prev.x);
                e.value(p.y - prev.y);
            }
            prev = p;
        }
    }
    return e.take();
}

TokenSequence tokenize(const ProcessedInk& ink, const TokenizerConfig& config) {
    switch (config.mode) {
        case CoordinateMode::Absolute: return tokenize_absolute(ink, config);
        case CoordinateMode::Relative: return tokenize_relative(ink, config);
        case CoordinateMode::Histogram: break;
    }
    require_coordinate_mode(config.mode);
    return {};
}

ProcessedInk detokenize(const TokenSequence& sequence, const TokenizerConfig& config) {
    require_coordinate_mode(config.mode);
    const std::vector<RawToken> tokens = sequence.emission == Emission::Text
                                             ? lex_tokens(sequence.text, config.stroke_separator)
                                             : indices_to_tokens(sequence.indices, config.mode, config.grid_size);

    ProcessedInk ink;
    ink.grid_size = config.grid_size;
    if (tokens.empty()) throw ParseError(ParseError::Unit::Token, 0, "empty sequence");
    if (!tokens.front().separator) throw ParseError(ParseError::Unit::Token, 0, "expected stroke separator");

    const bool relative = config.mode == CoordinateMode::Relative;
    long long cx = 0;
    long long cy = 0;
    std::size_t i = 0;
    while (i < tokens.size()) {
        const std::size_t stroke_start = i++;  // separator
        std::size_t j = i;
        while (j < tokens.size() && !tokens[j].separator) ++j;
        const std::size_t values = j - i;
        if (values == 0) throw ParseError(ParseError::Unit::Token, stroke_start, "empty stroke");
        if (values % 2 != 0) throw ParseError(ParseError::Unit::Token, j - 1, "odd coordinate count");

        GridStroke stroke;
        stroke.reserve(values / 2);
        for (; i < j; i += 2) {
            long long x = tokens[i].value;
            long long y = tokens[i + 1].value;
            if (relative) {
                cx += x;
                cy += y;
                x = cx;
                y = cy;
            }
            if (x < 0 || y < 0 || x > config.grid_size || y > config.grid_size)
                throw RangeError("token " + std::to_string(i) + ": reconstructed point (" + std::to_string(x) +
                                 ", " + std::to_string(y) + ") outside [0, " + std::to_string(config.grid_size) +
                                 "]");
            stroke.push_back({static_cast<int>(x), static_cast<int>(y)});
        }
        ink.strokes.push_back(std::move(stroke));
    }
    return ink;
}

std::vector<std::uint32_t> text_to_indices(std::string_view text, const TokenizerConfig& config) {
    require_coordinate_mode(config.mode);
    const auto tokens = lex_tokens(text, config.stroke_separator);
    const std::uint32_t sep = extended_separator(config.mode, config.grid_size);
    const long long shift = config.mode == CoordinateMode::Relative ? config.grid_size : 0;
    std::vector<std::uint32_t> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].separator) {
            out.push_back(sep);
            continue;
        }
        const long long idx = tokens[i].value + shift;
        if (idx < 0 || idx >= sep)
            throw ParseError(ParseError::Unit::Token, i, "value " + std::to_string(tokens[i].value) +
                                                             " has no extended index");
        out.push_back(static_cast<std::uint32_t>(idx));
    }
    return out;
}

std::string indices_to_text(std::span<const std::uint32_t> indices, const TokenizerConfig& config) {
    require_coordinate_mode(config.mode);
    const auto tokens = indices_to_tokens(indices, config.mode, config.grid_size);
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        if (t.separator)
            out += config.stroke_separator;
        else
            append_int(out, t.value);
    }
    return out;
}

}  // namespace inkrep
