#include <gtest/gtest.h>

#include <cmath>

#include "inkrep/ink.hpp"

using namespace inkrep;

TEST(Validate, AcceptsWellFormedInk) {
    RawInk ink{{{{0, 0, 0}, {1, 1, 10}, {2, 2, 20}}}, {}, {}};
    EXPECT_TRUE(validate(ink).empty());
}

TEST(Validate, ReportsNonMonotonicTime) {
    RawInk ink{{{{0, 0, 0}, {1, 1, 10}, {2, 2, 5}}}, {}, {}};
    const auto v = validate(ink);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("stroke 0"), std::string::npos);
    EXPECT_NE(v[0].find("point 2"), std::string::npos);
    EXPECT_NE(v[0].find("non-monotonic time"), std::string::npos);
}

TEST(Validate, ReportsEmptyInk) {
    const auto v = validate(RawInk{});
    ASSERT_EQ(v.size(), 1u);
    EXPECT_EQ(v[0], "empty ink");
}

TEST(Validate, ReportsEmptyStrokeAndNonFinite) {
    RawInk ink{{{}, {{0, NAN, 0}}}, {}, {}};
    const auto v = validate(ink);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_NE(v[0].find("empty stroke"), std::string::npos);
    EXPECT_NE(v[1].find("stroke 1, point 0: non-finite"), std::string::npos);
}

TEST(Validate, NegativeTimeIsAViolation) {
    RawInk ink{{{{0, 0, -1}}}, {}, {}};
    ASSERT_EQ(validate(ink).size(), 1u);
}

TEST(Validate, StrokeStartTimesNeedNotIncrease) {
    // Device clocks may reset between strokes; list order is authoritative.
    RawInk ink{{{{0, 0, 50}, {1, 0, 60}}, {{5, 5, 0}, {6, 6, 10}}}, {}, {}};
    EXPECT_TRUE(validate(ink).empty());
}

TEST(Validate, IsPure) {
    RawInk ink{{{{0, 0, 0}, {1, 1, 10}, {2, 2, 5}}, {}}, {}, {}};
    EXPECT_EQ(validate(ink), validate(ink));
}

TEST(ValidateProcessed, FlagsOutOfGridCoordinates) {
    ProcessedInk ink{{{{0, 0}, {225, 3}}}, 224, 20.0};
    const auto v = validate(ink);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("point 1"), std::string::npos);
}
