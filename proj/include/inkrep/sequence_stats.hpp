#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "inkrep/ink.hpp"
#include "inkrep/preprocess.hpp"
#include "inkrep/tokenizer.hpp"

namespace inkrep {

/// Maps a first-stage text sequence to the number of model tokens. Plug in a
/// BPE tokenizer here to reproduce model-specific counts. Called from
/// several threads at once.
using TokenCounter = std::function<std::size_t(std::string_view)>;

std::size_t whitespace_token_count(std::string_view text);

struct StageStats {
    std::string name;
    double median_points = 0.0;
    double median_tokens = 0.0;
};

/// One row per cumulative pipeline stage:
///   "Original x,y,t"             raw points serialized as x y t
///   "+Time sampling"             resampled, t dropped
///   "+Scale normalization"       normalized and rounded, configured coordinate mode
///   "+Extended token dictionary" one token per coordinate and separator
struct SequenceStats {
    std::size_t ink_count = 0;
    std::vector<StageStats> rows;

    std::string to_table() const;
    std::string to_json() const;
};

/// Text of an ink as its original (x, y, t) sequence, "<sep> x y t x y t ...".
std::string raw_sequence_text(const RawInk& ink, std::string_view separator, bool with_time);

/// Throws SchemaError on an empty corpus or a histogram tokenizer mode.
SequenceStats sequence_stats(std::span<const RawInk> corpus, const PreprocessConfig& preprocess,
                             const TokenizerConfig& tokenizer,
                             const TokenCounter& counter = whitespace_token_count);

double median(std::vector<double> values);

}  // namespace inkrep
