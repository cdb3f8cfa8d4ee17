#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace inkrep {

enum class TargetVocabulary { Character, Latex };

std::string_view to_string(TargetVocabulary v);
TargetVocabulary parse_target_vocabulary(std::string_view name);

struct TargetConfig {
    TargetVocabulary vocabulary = TargetVocabulary::Character;
    bool space_separated = true;

    /// Defaults per vocabulary: spaced characters for text, unspaced LaTeX
    /// for math.
    static TargetConfig for_vocabulary(TargetVocabulary v);
};

/// Stands in for a literal space in space-separated targets.
inline constexpr std::string_view kSpaceSentinel = "<space>";

/// Splits UTF-8 text into code points. Invalid bytes come out one per entry.
std::vector<std::string> utf8_characters(std::string_view text);

/// Model-facing target string. Character vocabulary with spacing joins code
/// points with single spaces, literal spaces becoming kSpaceSentinel
/// ("a b" -> "a <space> b"). LaTeX with spacing joins LaTeX tokens. Unspaced
/// targets are returned unchanged.
std::string encode_target(std::string_view label, const TargetConfig& config);

/// Inverse of encode_target: drops separator spaces and maps the sentinel
/// back to a space. Unspaced targets are returned unchanged.
std::string decode_target(std::string_view model_output, const TargetConfig& config);

/// The MathWriting LaTeX token list, in published order.
const std::vector<std::string>& latex_vocabulary();

/// Greedy longest-match segmentation against latex_vocabulary(). Whitespace
/// between tokens is consumed; characters outside the vocabulary become
/// single-character tokens.
std::vector<std::string> latex_tokenize(std::string_view label);

/// Tokens CER is computed over: code points for the character vocabulary,
/// LaTeX tokens for the latex vocabulary.
std::vector<std::string> target_tokens(std::string_view label, TargetVocabulary vocabulary);

}  // namespace inkrep
