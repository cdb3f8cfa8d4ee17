#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inkrep/ink.hpp"

namespace inkrep {

enum class CoordinateMode { Absolute, Relative, Histogram };
enum class Emission { Text, ExtendedIndex };

std::string_view to_string(CoordinateMode mode);
std::string_view to_string(Emission emission);
/// Throws SchemaError on unknown names.
CoordinateMode parse_coordinate_mode(std::string_view name);
Emission parse_emission(std::string_view name);

struct TokenizerConfig {
    CoordinateMode mode = CoordinateMode::Relative;
    Emission emission = Emission::Text;
    std::string stroke_separator = "<stroke>";
    /// Grid size used to map coordinates to extended indices when decoding.
    int grid_size = 224;

    /// Separator must be non-empty, whitespace-free and not an integer.
    void check() const;
};

/// Output of the tokenizer in one of two emission forms. Text is a single
/// space-joined string; extended-index form is one non-negative integer per
/// token, with the separator mapped to a sentinel just past the coordinate
/// range (see extended_separator()).
struct TokenSequence {
    Emission emission = Emission::Text;
    std::string text;
    std::vector<std::uint32_t> indices;

    /// Number of first-stage tokens (whitespace tokens or indices).
    std::size_t size() const;

    friend bool operator==(const TokenSequence&, const TokenSequence&) = default;
};

/// Extended-index layout for the coordinate modes:
///   absolute: value v in [0, N] -> v, separator -> N + 1
///   relative: value v in [-N, N] -> v + N, separator -> 2N + 1
std::uint32_t extended_separator(CoordinateMode mode, int grid_size);

/// "<stroke> x y x y ..." with absolute grid coordinates.
TokenSequence tokenize_absolute(const ProcessedInk& ink, const TokenizerConfig& config);

/// First point absolute, then every point as the offset from the previous
/// point in writing order, chaining across strokes.
TokenSequence tokenize_relative(const ProcessedInk& ink, const TokenizerConfig& config);

/// Dispatches on config.mode (absolute or relative).
TokenSequence tokenize(const ProcessedInk& ink, const TokenizerConfig& config);

/// Exact inverse of tokenize for the absolute and relative modes. Throws
/// ParseError (with token position) on grammar violations and RangeError when
/// a relative reconstruction leaves [0, grid_size].
ProcessedInk detokenize(const TokenSequence& sequence, const TokenizerConfig& config);

/// Conversion between emission forms for the coordinate modes.
std::vector<std::uint32_t> text_to_indices(std::string_view text, const TokenizerConfig& config);
std::string indices_to_text(std::span<const std::uint32_t> indices, const TokenizerConfig& config);

/// One element of a parsed first-stage token stream.
struct RawToken {
    bool separator = false;
    long long value = 0;
};

/// Splits text on whitespace into separators and signed decimal integers.
std::vector<RawToken> lex_tokens(std::string_view text, std::string_view separator);

}  // namespace inkrep
