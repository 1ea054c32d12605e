#include <gtest/gtest.h>

#include "precast/fixed_point.hpp"

using namespace precast;

TEST(FixedPoint, FormatTrimsTrailingZeros) {
  EXPECT_EQ(format_decimal(6000, 1000), "6");
  EXPECT_EQ(format_decimal(3500, 1000), "3.5");
  EXPECT_EQ(format_decimal(1, 1000), "0.001");
  EXPECT_EQ(format_decimal(-2250, 1000), "-2.25");
  EXPECT_EQ(format_decimal(7, 1), "7");
}

TEST(FixedPoint, ParseIsExact) {
  EXPECT_EQ(parse_decimal("6.0", 1000), 6000);
  EXPECT_EQ(parse_decimal("3.5", 1000), 3500);
  EXPECT_EQ(parse_decimal("0.125", 1000), 125);
  EXPECT_EQ(parse_decimal("12", 1000), 12000);
  EXPECT_EQ(parse_decimal("0.1", 10), 1);
}

TEST(FixedPoint, ParseRejectsExcessPrecisionAndGarbage) {
  EXPECT_THROW(parse_decimal("0.0001", 1000), std::invalid_argument);
  EXPECT_THROW(parse_decimal("abc", 1000), std::invalid_argument);
  EXPECT_THROW(parse_decimal("", 1000), std::invalid_argument);
  EXPECT_THROW(parse_decimal("1.2.3", 1000), std::invalid_argument);
}

TEST(FixedPoint, DecimalDigits) {
  EXPECT_EQ(decimal_digits(1), 0);
  EXPECT_EQ(decimal_digits(1000), 3);
  EXPECT_EQ(decimal_digits(250), -1);
  EXPECT_EQ(decimal_digits(0), -1);
}

TEST(FixedPoint, LengthArithmetic) {
  const Length a{3500}, b{4000};
  EXPECT_EQ((2 * a + b).units, 11000);
  EXPECT_LT(a, b);
  EXPECT_EQ((b - a).units, 500);
}
