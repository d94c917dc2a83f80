#include "lmom/rational.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace lmom;

TEST(Rational, NormalizesAndPrints) {
  EXPECT_EQ(make_rational(2, 4).str(), "1/2");
  EXPECT_EQ(make_rational(3, -6).str(), "-1/2");
  EXPECT_EQ(make_rational(4, 2).str(), "2/1");
  EXPECT_EQ(Rational(0).str(), "0/1");
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Rational, ParseRoundTrip) {
  for (const char* s : {"1/14", "-27/98", "0/1", "123456789012345678901234567891/7"}) EXPECT_EQ(parse_rational(s).str(), s);
  EXPECT_EQ(parse_rational("5"), Rational(5));
  EXPECT_THROW(parse_rational("x/2"), std::invalid_argument);
}

TEST(Rational, FieldAxiomsOnRandomValues) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::int64_t> num(-1000, 1000), den(1, 1000);
  for (int i = 0; i < 500; ++i) {
    Rational a = make_rational(num(rng), den(rng)), b = make_rational(num(rng), den(rng)), c = make_rational(num(rng), den(rng));
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a - a, Rational(0));
    if (b != Rational(0)) EXPECT_EQ(a / b * b, a);
  }
}

TEST(Rational, OrderingAndFloor) {
  EXPECT_LT(make_rational(1, 3), make_rational(1, 2));
  EXPECT_EQ(make_rational(-1, 3).floor(), BigInt(-1));
  EXPECT_EQ(make_rational(7, 2).floor(), BigInt(3));
  EXPECT_DOUBLE_EQ(make_rational(1, 4).to_double(), 0.25);
}

TEST(Rational, FastRationalAgrees) {
  FastRational a(i128(5), i128(14)), b(i128(-1), i128(14));
  FastRational s = a + b;
  EXPECT_EQ(s.str(), "2/7");
  EXPECT_EQ(s.convert<BigInt>(), make_rational(2, 7));
}
