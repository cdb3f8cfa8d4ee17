#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inkrep/target.hpp"

namespace inkrep {

/// Unit-cost Levenshtein distance between token sequences.
std::size_t edit_distance(std::span<const std::string> reference, std::span<const std::string> hypothesis);

/// edit_distance / |reference|. Throws SchemaError for an empty reference.
double cer(std::span<const std::string> reference, std::span<const std::string> hypothesis);

/// Character-level convenience overload (UTF-8 code points).
double cer(std::string_view reference, std::string_view hypothesis);

struct CerSample {
    std::size_t index = 0;
    std::string reference;
    std::string hypothesis;  // as given, before decoding
    std::size_t distance = 0;
    std::size_t reference_length = 0;
    std::optional<double> cer;
    std::string error;  // non-empty when the pair could not be scored
};

struct CerReport {
    /// Micro average: total distance / total reference length over scored
    /// samples. Empty when nothing could be scored.
    std::optional<double> aggregate;
    std::size_t total_distance = 0;
    std::size_t total_reference_length = 0;
    std::size_t error_count = 0;
    std::vector<CerSample> samples;

    std::string to_json() const;
};

struct CerPair {
    std::string reference;
    std::string hypothesis;
};

/// Scores every pair. Hypotheses pass through decode_target first; tokens
/// follow config.vocabulary. Per-pair failures are recorded, not thrown.
CerReport corpus_cer(std::span<const CerPair> pairs, const TargetConfig& config);

/// Reads {"reference", "hypothesis"} JSONL rows.
std::vector<CerPair> read_cer_pairs(const std::string& path);

}  // namespace inkrep
