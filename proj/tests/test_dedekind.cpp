#include "lmom/dedekind.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lmom;

TEST(Dedekind, Sawtooth) {
  EXPECT_EQ(sawtooth(Rational(0)), Rational(0));
  EXPECT_EQ(sawtooth(make_rational(1, 3)), make_rational(-1, 6));
  EXPECT_EQ(sawtooth(make_rational(-1, 3)), make_rational(1, 6));
  EXPECT_EQ(sawtooth(make_rational(7, 2)), Rational(0));
}

TEST(Dedekind, NaiveExamples) {
  EXPECT_EQ(dedekind_naive(1, 3), make_rational(1, 18));
  EXPECT_EQ(dedekind_naive(2, 5), Rational(0));
  EXPECT_EQ(dedekind_naive(2, 7), make_rational(1, 14));
  EXPECT_THROW(dedekind_naive(2, 4), std::domain_error);
}

TEST(Dedekind, FastExamples) {
  EXPECT_EQ(dedekind_fast(5, 2), Rational(0));
  EXPECT_EQ(dedekind_fast(2, 5) + dedekind_fast(5, 2), make_rational(-1, 4) + make_rational(4 + 25 + 1, 120));
  for (i64 d = 1; d <= 200; ++d) EXPECT_EQ(dedekind_fast(1, d), dedekind_one(d));
  EXPECT_EQ(dedekind_fast(2, 8191), make_rational(8190 * 8186, 24 * 8191));
  EXPECT_EQ(dedekind_two_odd(8191), dedekind_fast(2, 8191));
  EXPECT_EQ(dedekind_fast(-2, 7), -dedekind_fast(2, 7));
  EXPECT_EQ(dedekind_fast(9, 7), dedekind_fast(2, 7));
}

TEST(Dedekind, DispatchByMethod) {
  EXPECT_EQ(dedekind(2, 7, DedekindMethod::naive).value, make_rational(1, 14));
  EXPECT_EQ(dedekind(2, 7, DedekindMethod::reciprocity).value, make_rational(1, 14));
  EXPECT_THROW(dedekind(2, 7, DedekindMethod::cf), std::invalid_argument);
}

TEST(Dedekind, ContinuedFractionApproximation) {
  CfApprox a = dedekind_cf(1, 7);
  EXPECT_EQ(a.quotients, (std::vector<i64>{7}));
  EXPECT_NEAR(a.approx, 7.0 / 12, 1e-15);
  EXPECT_LT(std::fabs(a.approx - 5.0 / 14), 2);
  EXPECT_LE(std::fabs(dedekind_cf(3, 7).approx + 1.0 / 14), 2);
  EXPECT_NEAR(dedekind_cf(6, 7).approx, -a.approx, 2);
  double worst = 0;
  for (i64 p : {101, 1009, 10007}) {
    for (i64 x = 1; x < p; ++x) worst = std::max(worst, std::fabs(dedekind_cf(x, p).approx - dedekind_fast(x, p).to_double()));
  }
  EXPECT_LT(worst, 2);
}

TEST(Dedekind, TableIsScaledExactly) {
  DedekindTable t(101);
  EXPECT_EQ(t.denominator(), 6 * 101);
  for (u64 a = 1; a < 101; ++a) {
    EXPECT_EQ(t.value(a), dedekind_fast(static_cast<i64>(a), 101));
    EXPECT_EQ(t.scaled(a), -t.scaled(101 - a));
  }
}

TEST(Dedekind, SubgroupSumExamples) {
  EXPECT_EQ(subgroup_sum(subgroup(7, 2)), make_rational(1, 7));
  EXPECT_EQ(subgroup_sum(subgroup(7, 6)), Rational(0));
  EXPECT_EQ(subgroup_sum(subgroup(13, 4)), dedekind_naive(3, 13) + dedekind_naive(9, 13));
}

TEST(Dedekind, CorrelationExamples) {
  EXPECT_EQ(correlation(7, 1, 1).value, make_rational(27, 98));
  for (i64 k : {2, 3, 5}) EXPECT_EQ(correlation(101, k, k).value, correlation(101, 1, 1).value);
  double ratio = correlation(10007, 1, 1).value.to_double() / (5.0 / 144 * 10007.0 * 10007.0);
  EXPECT_NEAR(ratio, 1, 0.05);
  EXPECT_THROW(correlation(7, 7, 1), std::domain_error);
}

TEST(Dedekind, KfoldExamples) {
  auto g = subgroup(7, 2);
  EXPECT_EQ(kfold_correlation(g, 1, 2), make_rational(27, 98));
  KfoldCorrelation K(g.ctx, 2);
  EXPECT_EQ(K.subgroup_total(g), make_rational(1, 2));
  // p = 31, k = 3 against the triple loop
  auto s31 = subgroup(31, 2);
  KfoldCorrelation K3(s31.ctx, 3);
  for (u64 lambda : {1ull, 2ull, 17ull, 30ull}) {
    Rational brute;
    for (i64 t1 = 1; t1 < 31; ++t1) {
      for (i64 t2 = 1; t2 < 31; ++t2) {
        brute += dedekind_fast(t1, 31) * dedekind_fast(t2, 31) * dedekind_fast(static_cast<i64>(lambda) * t1 * t2 % 31, 31);
      }
    }
    EXPECT_EQ(K3.at(lambda), brute);
  }
}

TEST(Dedekind, KfoldFftMatchesExact) {
  PrimeContext ctx(101);
  DedekindTable table(101);
  auto ctxp = PrimeContext::make(101);
  for (int k : {2, 3}) {
    auto approx = kfold_correlation_fft(ctx, table, k);
    KfoldCorrelation K(ctxp, k);
    for (u64 l = 1; l < 101; ++l) EXPECT_NEAR(approx[l], K.at(l).to_double(), 1e-9 * std::max(1.0, std::fabs(approx[l])));
  }
}

TEST(Dedekind, FractionalMoment) {
  EXPECT_NEAR(fractional_moment(7, 2), 27.0 / 98, 1e-15);
  double sum5 = 0;
  for (i64 a = 1; a < 5; ++a) sum5 += std::fabs(dedekind_naive(a, 5).to_double());
  EXPECT_NEAR(fractional_moment(5, 1), sum5, 1e-15);
  for (u64 p : {1009ull, 10007ull}) EXPECT_LT(fractional_moment(p, 1.5) / std::pow(static_cast<double>(p), 1.5), 1.0);
}
