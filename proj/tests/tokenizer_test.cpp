#include <gtest/gtest.h>

#include <random>
#include <regex>

#include "inkrep/error.hpp"
#include "inkrep/tokenizer.hpp"
#include "test_support.hpp"

using namespace inkrep;

namespace {

ProcessedInk ink_of(std::vector<GridStroke> strokes) { return ProcessedInk{std::move(strokes), 224, 20.0}; }

TokenizerConfig config(CoordinateMode mode, Emission emission = Emission::Text) {
    TokenizerConfig c;
    c.mode = mode;
    c.emission = emission;
    return c;
}

}  // namespace

TEST(Absolute, SpecStrings) {
    const auto cfg = config(CoordinateMode::Absolute);
    EXPECT_EQ(tokenize_absolute(ink_of({{{2, 1}, {2, 2}}}), cfg).text, "<stroke> 2 1 2 2");
    EXPECT_EQ(tokenize_absolute(ink_of({{{2, 1}}, {{3, 1}, {3, 2}}}), cfg).text, "<stroke> 2 1 <stroke> 3 1 3 2");
    EXPECT_EQ(tokenize_absolute(ink_of({{{0, 0}}}), cfg).text, "<stroke> 0 0");
}

TEST(Relative, SpecStrings) {
    const auto cfg = config(CoordinateMode::Relative);
    EXPECT_EQ(tokenize_relative(ink_of({{{5, 5}, {6, 7}}}), cfg).text, "<stroke> 5 5 1 2");
    EXPECT_EQ(tokenize_relative(ink_of({{{5, 5}}}), cfg).text, "<stroke> 5 5");
    EXPECT_EQ(tokenize_relative(ink_of({{{0, 0}, {1, 0}}, {{4, 0}}}), cfg).text, "<stroke> 0 0 1 0 <stroke> 3 0");
}

TEST(Relative, NegativeOffsetsAreSignedDecimals) {
    const auto cfg = config(CoordinateMode::Relative);
    EXPECT_EQ(tokenize_relative(ink_of({{{5, 5}, {2, 9}}}), cfg).text, "<stroke> 5 5 -3 4");
}

TEST(Tokenize, CustomSeparator) {
    auto cfg = config(CoordinateMode::Absolute);
    cfg.stroke_separator = "|";
    EXPECT_EQ(tokenize(ink_of({{{1, 2}}}), cfg).text, "| 1 2");
    cfg.stroke_separator = "a b";
    EXPECT_THROW(cfg.check(), SchemaError);
    cfg.stroke_separator = "-12";
    EXPECT_THROW(cfg.check(), SchemaError);
}

TEST(ExtendedIndex, Layout) {
    EXPECT_EQ(extended_separator(CoordinateMode::Absolute, 224), 225u);
    EXPECT_EQ(extended_separator(CoordinateMode::Relative, 224), 449u);
    const auto abs = tokenize(ink_of({{{2, 1}, {2, 2}}}), config(CoordinateMode::Absolute, Emission::ExtendedIndex));
    EXPECT_EQ(abs.indices, (std::vector<std::uint32_t>{225, 2, 1, 2, 2}));
    const auto rel = tokenize(ink_of({{{5, 5}, {2, 9}}}), config(CoordinateMode::Relative, Emission::ExtendedIndex));
    EXPECT_EQ(rel.indices, (std::vector<std::uint32_t>{449, 229, 229, 221, 228}));
}

TEST(Detokenize, GrammarErrors) {
    const auto cfg = config(CoordinateMode::Absolute);
    auto text = [](std::string s) { return TokenSequence{Emission::Text, std::move(s), {}}; };
    try {
        detokenize(text("<stroke> 2"), cfg);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("odd coordinate count"), std::string::npos);
        EXPECT_EQ(e.unit(), ParseError::Unit::Token);
    }
    EXPECT_THROW(detokenize(text(""), cfg), ParseError);
    EXPECT_THROW(detokenize(text("2 1"), cfg), ParseError);
    EXPECT_THROW(detokenize(text("<stroke> <stroke> 1 1"), cfg), ParseError);
    EXPECT_THROW(detokenize(text("<stroke> 1 x"), cfg), ParseError);
    EXPECT_THROW(detokenize(text("<stroke> 1 225"), cfg), RangeError);
}

TEST(Detokenize, RelativeOutOfRange) {
    const auto cfg = config(CoordinateMode::Relative);
    EXPECT_THROW(detokenize(TokenSequence{Emission::Text, "<stroke> 5 5 -6 0", {}}, cfg), RangeError);
    EXPECT_THROW(detokenize(TokenSequence{Emission::Text, "<stroke> 220 5 5 0", {}}, cfg), RangeError);
}

TEST(RoundTrip, BothModesBothEmissions) {
    std::mt19937_64 rng(21);
    for (int n = 0; n < 2000; ++n) {
        const int grid = (n % 3 == 0) ? 224 : 8 + static_cast<int>(rng() % 300);
        const ProcessedInk ink = fixtures::random_processed_ink(rng, grid);
        for (auto mode : {CoordinateMode::Absolute, CoordinateMode::Relative}) {
            for (auto emission : {Emission::Text, Emission::ExtendedIndex}) {
                auto cfg = config(mode, emission);
                cfg.grid_size = grid;
                const TokenSequence seq = tokenize(ink, cfg);
                ASSERT_EQ(detokenize(seq, cfg), ink);
            }
        }
    }
}

TEST(Emission, TextAndIndicesAreBijective) {
    std::mt19937_64 rng(22);
    for (int n = 0; n < 500; ++n) {
        const ProcessedInk ink = fixtures::random_processed_ink(rng);
        for (auto mode : {CoordinateMode::Absolute, CoordinateMode::Relative}) {
            const auto text = tokenize(ink, config(mode, Emission::Text));
            const auto idx = tokenize(ink, config(mode, Emission::ExtendedIndex));
            const auto cfg = config(mode);
            EXPECT_EQ(text_to_indices(text.text, cfg), idx.indices);
            EXPECT_EQ(indices_to_text(idx.indices, cfg), text.text);
            EXPECT_EQ(text.size(), idx.size());
        }
    }
}

TEST(Emission, TextGrammar) {
    std::mt19937_64 rng(23);
    const std::regex grammar("(<stroke>( -?[0-9]+ -?[0-9]+)+)( <stroke>( -?[0-9]+ -?[0-9]+)+)*");
    for (int n = 0; n < 200; ++n) {
        const ProcessedInk ink = fixtures::random_processed_ink(rng);
        EXPECT_TRUE(std::regex_match(tokenize(ink, config(CoordinateMode::Relative)).text, grammar));
    }
}

TEST(Names, ParseAndPrint) {
    EXPECT_EQ(parse_coordinate_mode("histogram"), CoordinateMode::Histogram);
    EXPECT_EQ(to_string(CoordinateMode::Relative), "relative");
    EXPECT_EQ(parse_emission("extended_index"), Emission::ExtendedIndex);
    EXPECT_THROW(parse_coordinate_mode("polar"), SchemaError);
}
