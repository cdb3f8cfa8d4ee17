#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "inkrep/histogram.hpp"
#include "inkrep/ink.hpp"
#include "inkrep/preprocess.hpp"
#include "inkrep/render.hpp"
#include "inkrep/sequence_stats.hpp"
#include "inkrep/target.hpp"
#include "inkrep/tokenizer.hpp"

namespace inkrep {

struct MixSource {
    std::string name;
    std::filesystem::path path;
    double weight = 0.0;
};

struct MixSpec {
    std::vector<MixSource> sources;
    std::uint64_t seed = 0;

    /// Weights non-negative and summing to 1 within 1e-9.
    void check() const;
};

struct MixDraw {
    std::size_t source = 0;
    std::size_t record = 0;
};

/// Core sampler: each draw picks a source with probability equal to its
/// weight, then the next record of that source's seeded shuffle. A source is
/// reshuffled only after all of its records were emitted once. Throws
/// SchemaError if a positively weighted source has no records.
std::vector<MixDraw> mix_draws(std::span<const std::size_t> source_sizes, std::span<const double> weights,
                               std::uint64_t seed, std::size_t n);

struct SourcedInk {
    std::string source;
    RawInk ink;
};

/// Loads the sources (canonical JSONL) and returns n mixed records.
std::vector<SourcedInk> mix(const MixSpec& spec, std::size_t n);

struct ExportConfig {
    PreprocessConfig preprocess;
    TokenizerConfig tokenizer;
    RenderConfig render;
    TargetConfig target;
    /// Records whose token count exceeds this are flagged, not dropped.
    std::size_t max_tokens = 1024;
    /// Required for the histogram tokenizer mode.
    std::optional<HistogramCodebook> codebook;
    unsigned threads = 0;
};

struct TrainingRecord {
    std::string id;
    std::string source;
    std::string input_text;
    std::string image_path;  // relative to the export directory
    std::string target;
    std::size_t token_count = 0;
    bool over_budget = false;
};

struct ExportStats {
    std::size_t records = 0;
    std::size_t failures = 0;
    std::size_t images = 0;
    std::size_t over_budget = 0;
    double median_token_length = 0.0;
    std::map<std::string, std::size_t> per_source;
    std::vector<std::string> errors;

    std::string to_json() const;
};

struct ExportResult {
    std::vector<TrainingRecord> records;
    ExportStats stats;
};

std::string record_to_json_line(const TrainingRecord& record);

/// Runs preprocess -> tokenize (text) and render -> PNG for each ink and
/// writes out_dir/manifest.jsonl, out_dir/stats.json and out_dir/images/.
/// Per-record failures (including a missing label) are skipped and counted.
ExportResult export_dataset(std::span<const SourcedInk> corpus, const ExportConfig& config,
                            const std::filesystem::path& out_dir,
                            const TokenCounter& counter = whitespace_token_count);

}  // namespace inkrep
