#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "inkrep/ink.hpp"
#include "inkrep/tokenizer.hpp"

namespace inkrep {

struct Offset {
    double dx = 0.0;
    double dy = 0.0;
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

/// Codebook over offsets in polar form: uniform angle buckets over [0, 2pi)
/// crossed with data-adaptive buckets on log distance. Zero-length offsets
/// get a dedicated token.
///
/// Token layout:
///   0                              zero offset
///   1 + angle * D + distance       joint cell (D = distance bucket count)
///   1 + A * D                      stroke separator
/// In extended-index emission the start-position coordinates follow as
/// separator + 1 + zigzag(v), outside the vocabulary proper.
class HistogramCodebook {
public:
    static constexpr int kFormatVersion = 1;
    static constexpr std::uint32_t kZeroToken = 0;

    HistogramCodebook() = default;

    /// `distance_edges` are D + 1 strictly increasing log-distance boundaries.
    /// Bucket j is [edges[j], edges[j+1]); values outside the trained range
    /// clamp to the first or last bucket.
    HistogramCodebook(int angle_bucket_count, std::vector<double> distance_edges);

    int angle_bucket_count() const { return angle_buckets_; }
    const std::vector<double>& distance_edges() const { return edges_; }
    std::size_t distance_bucket_count() const { return edges_.empty() ? 0 : edges_.size() - 1; }
    std::size_t cell_count() const { return static_cast<std::size_t>(angle_buckets_) * distance_bucket_count(); }
    double angle_bucket_width() const;

    /// Zero token + joint cells + separator.
    std::size_t vocab_size() const { return cell_count() + 2; }
    std::uint32_t separator_token() const { return static_cast<std::uint32_t>(cell_count() + 1); }

    int angle_bucket(double dx, double dy) const;
    std::size_t distance_bucket(double log_distance) const;
    std::uint32_t encode(const Offset& offset) const;
    /// Centre of the token's cell (midpoint angle, midpoint log distance).
    Offset centroid(std::uint32_t token) const;

    std::string to_json() const;
    static HistogramCodebook from_json(const std::string& text);
    void save(const std::filesystem::path& path) const;
    static HistogramCodebook load(const std::filesystem::path& path);

    friend bool operator==(const HistogramCodebook&, const HistogramCodebook&) = default;

private:
    int angle_buckets_ = 0;
    std::vector<double> edges_;
};

struct HistogramTrainingOptions {
    int angle_buckets = 100;
    /// A joint cell must hold less than this fraction of all training offsets.
    double cell_fraction = 0.001;
    /// Upper bound on vocab_size(); splitting stops before exceeding it.
    std::size_t max_vocab = 16384;
    /// Log-distance intervals narrower than this are never split.
    double min_interval_width = 1e-9;
};

enum class HistogramStop { Converged, VocabCap, Unsplittable };

struct HistogramTrainingResult {
    HistogramCodebook codebook;
    HistogramStop stop = HistogramStop::Converged;
    std::size_t offset_count = 0;  // including zero offsets
    std::size_t zero_count = 0;
    std::size_t max_cell_count = 0;  // after training
    std::size_t splits = 0;
};

/// Trains the codebook by repeatedly halving (in log space) the distance
/// interval whose fullest joint cell holds at least cell_fraction of the
/// data. Throws SchemaError for an empty stream or one with only zero
/// offsets.
HistogramTrainingResult train_histogram_codebook(std::span<const Offset> offsets,
                                                 const HistogramTrainingOptions& options = {});

/// Consecutive-point offsets of an ink in writing order, chaining across
/// strokes (the first point contributes nothing).
std::vector<Offset> ink_offsets(const RawInk& ink);

/// Per ink: separator, start-position pair (rounded absolute x y), then one
/// token per remaining point; later strokes start with a separator followed
/// by their points' tokens.
TokenSequence tokenize_histogram(const RawInk& ink, const HistogramCodebook& codebook, const TokenizerConfig& config);

using Polyline = std::vector<Vec2>;

/// Rebuilds point positions from centroids of the token cells.
std::vector<Polyline> detokenize_histogram(const TokenSequence& sequence, const HistogramCodebook& codebook,
                                           const TokenizerConfig& config);

}  // namespace inkrep
