#include "lmom/characters.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lmom;

namespace {
CharacterIndex legendre(u64 p) { return {PrimeContext::make(p), (p - 1) / 2}; }
}  // namespace

TEST(Characters, Orthogonality) {
  for (u64 p : {7ull, 13ull, 31ull}) {
    auto ctx = PrimeContext::make(p);
    for (u64 j1 = 0; j1 < p - 1; ++j1) {
      for (u64 j2 = 0; j2 < p - 1; ++j2) {
        cplx acc = 0;
        CharacterIndex a{ctx, j1}, b{ctx, j2};
        for (u64 x = 1; x < p; ++x) acc += a(x) * std::conj(b(x));
        EXPECT_NEAR(std::abs(acc - cplx(j1 == j2 ? static_cast<double>(p - 1) : 0.0)), 0, 1e-9);
      }
    }
  }
}

TEST(Characters, OddCountOverSubgroup) {
  for (u64 p : primes_in(3, 300)) {
    auto ctx = PrimeContext::make(p);
    for (u64 m : divisors(p - 1)) {
      if (m % 2) continue;
      auto spec = subgroup(ctx, m);
      u64 trivial = 0, odd = 0;
      for (u64 j = 0; j < p - 1; ++j) {
        CharacterIndex chi{ctx, j};
        if (!chi.trivial_on(spec)) continue;
        ++trivial;
        odd += chi.odd();
      }
      ASSERT_EQ(trivial, m);
      ASSERT_EQ(odd, spec.d % 2 == 1 ? m / 2 : 0u) << p << " " << m;
      ASSERT_EQ(odd_abs2_values(spec).size(), odd);
    }
  }
}

TEST(Characters, SawtoothSumExamples) {
  EXPECT_NEAR(std::abs(character_sum_sawtooth(legendre(7)) - cplx(-1)), 0, 1e-14);
  auto ctx = PrimeContext::make(13);
  for (u64 j = 2; j < 12; j += 2) EXPECT_NEAR(std::abs(character_sum_sawtooth({ctx, j})), 0, 1e-14);
  EXPECT_THROW(character_sum_sawtooth({ctx, 0}), std::domain_error);
}

TEST(Characters, ExactAbs2Examples) {
  EXPECT_NEAR(L1_abs2_exact(legendre(7)), kPi * kPi / 7, 1e-14);
  EXPECT_NEAR(L1_abs2_exact(legendre(3)), kPi * kPi / 27, 1e-14);
  // p = 5, order-4 character against a long truncated series
  CharacterIndex chi{PrimeContext::make(5), 1};
  cplx series = 0;
  for (u64 n = 1; n <= 2000000; ++n) series += chi(n) / static_cast<double>(n);
  EXPECT_NEAR(std::norm(series), L1_abs2_exact(chi), 1e-5);
}

TEST(Characters, SmoothedSeries) {
  cplx L = L1_smoothed(legendre(7), 1e5);
  EXPECT_NEAR(L.real(), kPi / std::sqrt(7.0), 1e-4);
  EXPECT_NEAR(L.imag(), 0, 1e-12);
  // Cauchy along Z = 1e4, 1e5, 1e6
  auto ctx11 = PrimeContext::make(11);
  for (u64 j = 1; j < 10; j += 2) {
    CharacterIndex chi{ctx11, j};
    cplx prev = L1_smoothed(chi, 1e4);
    for (double Z : {1e5, 1e6}) {
      cplx LZ = L1_smoothed(chi, Z);
      EXPECT_LT(std::abs(LZ - prev), 10.0 * 11 / Z);
      prev = LZ;
    }
  }
  // the first-order bias is -L(0,chi)/Z = A(chi)/Z
  for (u64 p : {11ull, 101ull}) {
    auto ctx = PrimeContext::make(p);
    auto B = smoothed_residue_sums(p, 1e6);
    for (u64 j = 1; j < p - 1; j += 2) {
      CharacterIndex chi{ctx, j};
      cplx LZ = L1_smoothed(chi, 1e6, &B);
      EXPECT_NEAR(std::norm(LZ - character_sum_sawtooth(chi) / 1e6), L1_abs2_exact(chi), 1e-11);
    }
  }
}

TEST(Characters, MomentExamples) {
  auto s7 = subgroup(7, 2);
  EXPECT_NEAR(moment(s7, 2).value, kPi * kPi / 7, 1e-12);
  EXPECT_NEAR(moment(s7, 4).value, std::pow(kPi, 4) / 49, 1e-12);
  EXPECT_NEAR(moment_via_dedekind(s7, 1).value, 2 * kPi * kPi / 7 * (5.0 / 14 + 1.0 / 7), 1e-12);
  EXPECT_NEAR(moment_via_dedekind(s7, 2).value, std::pow(kPi, 4) / 49, 1e-12);
  auto s31 = subgroup(31, 2);
  EXPECT_NEAR(moment_via_dedekind(s31, 3).value, moment(s31, 6).value, 1e-9 * moment(s31, 6).value);
  // d even: no odd characters
  EXPECT_EQ(moment(subgroup(13, 2), 2).value, 0);
  EXPECT_THROW(moment(subgroup(13, 3), 2), std::domain_error);
  // p ~ 1e4 with d = 3
  EXPECT_NEAR(moment(subgroup(10009, 3336), 2).value, kPi * kPi / 6, 0.1);
}

TEST(Characters, SmoothedMomentWithinBudget) {
  auto spec = subgroup(101, 20);
  MomentReport exact = moment(spec, 2);
  MomentReport smooth = moment(spec, 2, 1e6, MomentMethod::smoothed);
  EXPECT_LE(std::fabs(exact.value - smooth.value), smooth.error_budget);
  MomentReport frac = moment(spec, 1.5);
  EXPECT_EQ(frac.method, MomentMethod::smoothed);
  EXPECT_GT(frac.value, 0);
}

TEST(Characters, TwistedFourth) {
  TwistedFourth t = twisted_fourth(7, 1, 1);
  EXPECT_EQ(t.correlation, make_rational(27, 98));
  EXPECT_NEAR(t.value, 2 * std::pow(kPi, 4) / 49 * 27.0 / 98, 1e-12);
  EXPECT_NEAR(t.identity, t.value, 1e-12);
  TwistedFourth t3 = twisted_fourth(101, 3, 3), t1 = twisted_fourth(101, 1, 1);
  EXPECT_NEAR(t3.value, t1.value, 1e-12);
  TwistedFourth t21 = twisted_fourth(100003, 2, 1);
  EXPECT_NEAR(t21.value / c_constant(2, 1), 1, 0.1);
}

TEST(Characters, Constants) {
  EXPECT_NEAR(a_constant(1).value(), kPi * kPi / 6, 1e-12);
  EXPECT_NEAR(a_constant(2).value(), std::pow(kPi * kPi / 6, 4) / (std::pow(kPi, 4) / 90), 1e-10);
  AConstant a3 = a_constant(3);
  EXPECT_TRUE(a3.agree);
  EXPECT_NEAR(a3.euler, a3.direct, 1e-10 * a3.euler);
  EXPECT_NEAR(c_constant(1, 1), 5 * std::pow(kPi, 4) / 72, 1e-10);
  EXPECT_THROW(a_constant(0), std::domain_error);
}

TEST(Characters, WSums) {
  auto spec = subgroup(10007, 2);
  double plus = w_sums(spec, 1, 1, 1e5, +1);
  EXPECT_NEAR(plus, a_constant(1).value(), 20 / std::sqrt(10007.0));
  double minus = w_sums(subgroup(101, 2), 1, 1, 1e4, -1);
  EXPECT_LT(std::fabs(minus), 10 / std::sqrt(101.0));
  WReconstruction r = w_reconstruction(subgroup(101, 20), 1, 1e6);
  EXPECT_NEAR(r.w_total, r.character_side, 1e-9 * std::max(1.0, r.character_side));
  EXPECT_NEAR(r.character_side, r.moment, 1e-3);
  WReconstruction r2 = w_reconstruction(subgroup(101, 20), 2, 1e5);
  EXPECT_NEAR(r2.w_total, r2.character_side, 1e-9 * std::max(1.0, r2.character_side));
}

TEST(Characters, EmpiricalCdf) {
  auto spec = subgroup(101, 100);
  auto v = odd_abs2_values(spec);
  for (double& x : v) x = std::sqrt(x);
  std::sort(v.begin(), v.end());
  double median = v[v.size() / 2];
  auto cdf = empirical_cdf(spec, {v.front() / 2, median, v.back() * 2});
  EXPECT_EQ(cdf[0], 0);
  EXPECT_NEAR(cdf[1], static_cast<double>(v.size() / 2 + 1) / static_cast<double>(v.size()), 1e-15);
  EXPECT_EQ(cdf[2], 1);
  EXPECT_THROW(empirical_cdf(spec, {2.0, 1.0}), std::domain_error);
}
