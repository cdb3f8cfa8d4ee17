#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "inkrep/error.hpp"
#include "inkrep/histogram.hpp"
#include "inkrep/preprocess.hpp"
#include "test_support.hpp"

using namespace inkrep;

namespace {

constexpr double kPi = std::numbers::pi;

// Joint cell occupancy computed directly from the definition, independent of
// the trainer's bookkeeping.
std::vector<std::size_t> cell_counts(const HistogramCodebook& cb, std::span<const Offset> offsets) {
    std::vector<std::size_t> counts(cb.vocab_size(), 0);
    for (const auto& o : offsets) ++counts[cb.encode(o)];
    return counts;
}

std::vector<double> widths(const HistogramCodebook& cb) {
    std::vector<double> w;
    const auto& e = cb.distance_edges();
    for (std::size_t i = 1; i < e.size(); ++i) w.push_back(e[i] - e[i - 1]);
    return w;
}

std::vector<Offset> log_uniform_annulus(std::mt19937_64& rng, std::size_t n, double r_lo, double r_hi) {
    std::uniform_real_distribution<double> lr(std::log(r_lo), std::log(r_hi));
    std::uniform_real_distribution<double> th(0.0, 2.0 * kPi);
    std::vector<Offset> out(n);
    for (auto& o : out) {
        const double r = std::exp(lr(rng));
        const double t = th(rng);
        o = {r * std::cos(t), r * std::sin(t)};
    }
    return out;
}

}  // namespace

TEST(HistogramCodebook, AngleBucketsPartitionCircle) {
    const HistogramCodebook cb(100, {0.0, 1.0});
    EXPECT_DOUBLE_EQ(cb.angle_bucket_width(), 2.0 * kPi / 100.0);
    EXPECT_EQ(cb.angle_bucket(1, 0), 0);
    EXPECT_EQ(cb.angle_bucket(0, 1), 25);
    EXPECT_EQ(cb.angle_bucket(-1, 0), 50);
    EXPECT_EQ(cb.angle_bucket(1, -1e-12), 99);
}

TEST(HistogramCodebook, HalfOpenEdgesAndClamp) {
    const HistogramCodebook cb(4, {0.0, 1.0, 2.0, 3.0});
    EXPECT_EQ(cb.distance_bucket(0.0), 0u);
    EXPECT_EQ(cb.distance_bucket(1.0), 1u);  // edge goes to the higher bucket
    EXPECT_EQ(cb.distance_bucket(2.0), 2u);
    EXPECT_EQ(cb.distance_bucket(0.999), 0u);
    EXPECT_EQ(cb.distance_bucket(3.0), 2u);
    EXPECT_EQ(cb.distance_bucket(100.0), 2u);
    EXPECT_EQ(cb.distance_bucket(-5.0), 0u);
    EXPECT_EQ(cb.encode({std::exp(1.0) + 1e-12, 0}), 1u + 0 * 3 + 1);
    EXPECT_EQ(cb.encode({1e9, 0}), 1u + 2);
    EXPECT_EQ(cb.encode({0, 0}), HistogramCodebook::kZeroToken);
}

TEST(HistogramCodebook, TokenLayout) {
    const HistogramCodebook cb(100, {0.0, 0.5, 1.0});
    EXPECT_EQ(cb.cell_count(), 200u);
    EXPECT_EQ(cb.vocab_size(), 202u);
    EXPECT_EQ(cb.separator_token(), 201u);
    EXPECT_THROW(cb.centroid(201), RangeError);
    for (std::uint32_t tok = 1; tok <= 200; ++tok) EXPECT_EQ(cb.encode(cb.centroid(tok)), tok);
}

TEST(HistogramCodebook, JsonRoundTripAndVersionCheck) {
    const HistogramCodebook cb(7, {-1.0, 0.25, 3.5});
    EXPECT_EQ(HistogramCodebook::from_json(cb.to_json()), cb);
    std::string doc = cb.to_json();
    const auto pos = doc.find("\"version\": 1");
    ASSERT_NE(pos, std::string::npos);
    doc.replace(pos, 12, "\"version\": 2");
    EXPECT_THROW(HistogramCodebook::from_json(doc), SchemaError);
    EXPECT_THROW(HistogramCodebook::from_json("{}"), SchemaError);
    EXPECT_THROW(HistogramCodebook(3, {1.0, 1.0}), SchemaError);
}

TEST(HistogramTraining, Errors) {
    EXPECT_THROW(train_histogram_codebook({}), SchemaError);
    const std::vector<Offset> zeros(10);
    try {
        train_histogram_codebook(zeros);
        FAIL();
    } catch (const SchemaError& e) {
        EXPECT_NE(std::string(e.what()).find("degenerate offset distribution"), std::string::npos);
    }
}

TEST(HistogramTraining, LogUniformAnnulusGivesEqualWidths) {
    std::mt19937_64 rng(31);
    const auto offsets = log_uniform_annulus(rng, 200000, 0.5, 50.0);
    const auto result = train_histogram_codebook(offsets);
    EXPECT_EQ(result.stop, HistogramStop::Converged);
    const auto w = widths(result.codebook);
    ASSERT_GE(w.size(), 8u);
    const auto [mn, mx] = std::minmax_element(w.begin(), w.end());
    EXPECT_LT(*mx / *mn, 1.0 + 1e-9);
}

TEST(HistogramTraining, ConcentrationNarrowsSmallBuckets) {
    std::mt19937_64 rng(32);
    auto offsets = log_uniform_annulus(rng, 90000, 0.1, 1.0);
    const auto big = log_uniform_annulus(rng, 10000, 1.0, 100.0);
    offsets.insert(offsets.end(), big.begin(), big.end());
    const auto result = train_histogram_codebook(offsets);
    const auto& e = result.codebook.distance_edges();
    const auto w = widths(result.codebook);
    EXPECT_LE(*std::min_element(w.begin(), w.end()), *std::max_element(w.begin(), w.end()));
    double low_max = 0.0, high_min = INFINITY;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (e[i + 1] <= 0.0) low_max = std::max(low_max, w[i]);
        if (e[i] >= 0.0) high_min = std::min(high_min, w[i]);
    }
    EXPECT_LT(low_max, high_min);
}

TEST(HistogramTraining, ConvergedMeansEveryCellBelowThreshold) {
    std::mt19937_64 rng(33);
    std::vector<Offset> offsets;
    for (int i = 0; i < 400; ++i) {
        const RawInk ink = resample_time(fixtures::synthetic_ink(rng), 20.0);
        const auto o = ink_offsets(ink);
        offsets.insert(offsets.end(), o.begin(), o.end());
    }
    HistogramTrainingOptions opts;
    opts.cell_fraction = 0.002;
    const auto result = train_histogram_codebook(offsets, opts);
    ASSERT_EQ(result.stop, HistogramStop::Converged);
    EXPECT_EQ(result.offset_count, offsets.size());
    const auto counts = cell_counts(result.codebook, offsets);
    const double threshold = opts.cell_fraction * static_cast<double>(offsets.size());
    for (std::size_t tok = 1; tok + 1 < counts.size(); ++tok) EXPECT_LT(static_cast<double>(counts[tok]), threshold);
    EXPECT_EQ(*std::max_element(counts.begin() + 1, counts.end() - 1), result.max_cell_count);
}

TEST(HistogramTraining, VocabCapIsRespected) {
    std::mt19937_64 rng(34);
    const auto offsets = log_uniform_annulus(rng, 50000, 0.5, 50.0);
    HistogramTrainingOptions opts;
    opts.max_vocab = 900;
    const auto result = train_histogram_codebook(offsets, opts);
    EXPECT_EQ(result.stop, HistogramStop::VocabCap);
    EXPECT_LE(result.codebook.vocab_size(), 900u);
}

TEST(HistogramTraining, IsDeterministic) {
    std::mt19937_64 rng(35);
    const auto offsets = log_uniform_annulus(rng, 20000, 0.1, 10.0);
    EXPECT_EQ(train_histogram_codebook(offsets).codebook, train_histogram_codebook(offsets).codebook);
}

TEST(HistogramTokenize, CountingRule) {
    const HistogramCodebook cb(100, {-2.0, 0.0, 2.0, 4.0});
    RawInk ink;
    ink.strokes.push_back({});
    for (int i = 0; i < 50; ++i) ink.strokes[0].push_back({100.0 + i * 3.0, 50.0 + (i % 7), i * 20.0});
    TokenizerConfig cfg;
    cfg.mode = CoordinateMode::Histogram;
    const auto text = tokenize_histogram(ink, cb, cfg);
    EXPECT_EQ(text.size(), 49u + 2u + 1u);
    cfg.emission = Emission::ExtendedIndex;
    const auto idx = tokenize_histogram(ink, cb, cfg);
    EXPECT_EQ(idx.indices.size(), 52u);
    EXPECT_EQ(idx.indices[0], cb.separator_token());
}

TEST(HistogramTokenize, TextFormAndStrokes) {
    const HistogramCodebook cb(4, {0.0, 1.0, 2.0, 3.0});
    RawInk ink{{{{10.4, 20.6, 0}, {13.0, 20.6, 20}}, {{13.0, 20.6, 100}}}, {}, {}};
    TokenizerConfig cfg;
    cfg.mode = CoordinateMode::Histogram;
    // dx = 2.6: log 2.6 = 0.955 -> bucket 0; second stroke starts with a zero offset.
    EXPECT_EQ(tokenize_histogram(ink, cb, cfg).text, "<stroke> 10 21 1 <stroke> 0");
}

TEST(HistogramTokenize, DetokenizeApproximatesPath) {
    std::mt19937_64 rng(36);
    std::vector<Offset> offsets;
    std::vector<RawInk> inks;
    for (int i = 0; i < 300; ++i) {
        inks.push_back(resample_time(fixtures::synthetic_ink(rng), 20.0));
        const auto o = ink_offsets(inks.back());
        offsets.insert(offsets.end(), o.begin(), o.end());
    }
    const auto cb = train_histogram_codebook(offsets).codebook;
    for (auto emission : {Emission::Text, Emission::ExtendedIndex}) {
        TokenizerConfig cfg;
        cfg.mode = CoordinateMode::Histogram;
        cfg.emission = emission;
        const RawInk& ink = inks[0];
        const auto lines = detokenize_histogram(tokenize_histogram(ink, cb, cfg), cb, cfg);
        ASSERT_EQ(lines.size(), ink.strokes.size());
        for (std::size_t s = 0; s < lines.size(); ++s) ASSERT_EQ(lines[s].size(), ink.strokes[s].size());
        EXPECT_NEAR(lines[0][0].x, ink.strokes[0][0].x, 0.5);
        EXPECT_NEAR(lines[0][0].y, ink.strokes[0][0].y, 0.5);
    }
}
