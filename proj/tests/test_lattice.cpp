#include "lmom/lattice.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace lmom;

TEST(Lattice, Weight) {
  EXPECT_EQ(weight_r({0, 0}), 1u);
  EXPECT_EQ(weight_r({-2, 1}), 2u);
  EXPECT_EQ(weight_r({3, -4}), 12u);
}

TEST(Lattice, Rho2Examples) {
  for (u64 p : {7ull, 101ull}) {
    LatticeWitness a = rho2(1, p);
    EXPECT_EQ(a.rho, 1u);
    EXPECT_EQ(lattice_form(a.witness, 1, p), 0u);
    EXPECT_EQ(rho2(p - 1, p).rho, 1u);
  }
  EXPECT_EQ(rho2(1, 7).witness, (std::vector<i64>{-1, 1}));
  EXPECT_EQ(rho2(6, 7).witness, (std::vector<i64>{1, 1}));
  LatticeWitness w = rho2(2, 7);
  EXPECT_EQ(w.rho, 2u);
  EXPECT_EQ(w.witness, (std::vector<i64>{-2, 1}));
  EXPECT_THROW(rho2(7, 7), std::domain_error);
}

TEST(Lattice, Rho2MatchesExhaustive) {
  for (u64 p : primes_up_to(400)) {
    for (u64 l = 1; l < p; ++l) {
      LatticeWitness w = rho2(l, p);
      ASSERT_EQ(w.rho, rho2_exhaustive(l, p));
      ASSERT_EQ(weight_r(w.witness), w.rho);
      ASSERT_EQ(lattice_form(w.witness, l, p), 0u);
      ASSERT_TRUE(rho2_below(l, p, static_cast<double>(w.rho) + 0.5));
      ASSERT_FALSE(rho2_below(l, p, static_cast<double>(w.rho) - 0.5));
    }
  }
}

TEST(Lattice, RhoSReducesAndCaps) {
  auto r2 = rho_s(2, 7, 2);
  ASSERT_TRUE(r2);
  EXPECT_EQ(r2->rho, 2u);
  auto r3 = rho_s(3, 101, 3);
  ASSERT_TRUE(r3);
  EXPECT_EQ(lattice_form(r3->witness, 3, 101), 0u);
  EXPECT_LE(r3->rho, rho2(3, 101).rho);
  EXPECT_THROW(rho_s(3, 101, 3, 101), feasibility_error);
}

TEST(Lattice, SigmaExamples) {
  for (u64 p : {5ull, 7ull, 101ull}) EXPECT_EQ(sigma(1, 2, p).value, make_rational(5, 2));
  for (u64 p : {7ull, 101ull}) {
    for (u64 l = 2; l + 1 < p; ++l) EXPECT_EQ(sigma(l, 1, p).value, Rational(0));
  }
}

TEST(Lattice, SigmaProgressionMatchesBruteForce) {
  for (u64 p : {7ull, 53ull, 211ull, 499ull}) {
    for (u64 l : std::vector<u64>{1, 2, 3, p - 2}) {
      for (double H : {1.0, 2.0, 7.0, 30.0, 300.0}) {
        ASSERT_EQ(sigma_histogram(l, H, p), sigma2_histogram_bruteforce(l, H, p)) << p << " " << l << " " << H;
        ASSERT_NEAR(sigma2_double(l, H, p), sigma(l, H, p).as_double(), 1e-12);
      }
    }
  }
}

TEST(Lattice, SigmaAllMatchesPointwise) {
  for (u64 p : {101ull, 1009ull}) {
    PrimeContext ctx(p);
    for (double H : {3.0, 17.0}) {
      auto all = sigma2_all(ctx, H);
      for (u64 l = 1; l < p; l += 13) EXPECT_NEAR(all[l], sigma2_double(l, H, p), 1e-9);
    }
  }
}

TEST(Lattice, BoxCountExamples) {
  std::vector<i64> lows{0, 0}, sides{2, 2};
  BoxCount b = box_count(2, 7, lows, sides);
  u64 brute = 0;
  for (i64 h1 = 1; h1 <= 2; ++h1) {
    for (i64 h2 = 1; h2 <= 2; ++h2) brute += (h1 + 2 * h2) % 7 == 0;
  }
  EXPECT_EQ(b.count, brute);
  std::vector<i64> big{11, 11};
  EXPECT_EQ(box_count(1, 11, lows, big).count, 11u);
}

TEST(Lattice, BoxCountMatchesEnumerationAndBound) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const u64 p = 101;
    u64 l = std::uniform_int_distribution<u64>(1, p - 1)(rng);
    std::vector<i64> lows(2), sides(2);
    for (int j = 0; j < 2; ++j) {
      lows[j] = std::uniform_int_distribution<i64>(-200, 200)(rng);
      sides[j] = std::uniform_int_distribution<i64>(1, 60)(rng);
    }
    i64 a = std::uniform_int_distribution<i64>(0, 100)(rng);
    BoxCount b = box_count(l, p, lows, sides, a);
    u64 brute = 0;
    for (i64 h1 = lows[0] + 1; h1 <= lows[0] + sides[0]; ++h1) {
      for (i64 h2 = lows[1] + 1; h2 <= lows[1] + sides[1]; ++h2) brute += mod(h1 + h2 * static_cast<i64>(l) + a, p) == 0;
    }
    ASSERT_EQ(b.count, brute);
    ASSERT_TRUE(b.within_bound);
  }
  // s = 3
  std::vector<i64> lows3{-5, -5, -5}, sides3{10, 10, 10};
  BoxCount b3 = box_count(5, 101, lows3, sides3);
  u64 brute = 0;
  for (i64 x = -4; x <= 5; ++x) {
    for (i64 y = -4; y <= 5; ++y) {
      for (i64 z = -4; z <= 5; ++z) brute += mod(x + 5 * y + 25 * z, 101) == 0;
    }
  }
  EXPECT_EQ(b3.count, brute);
  EXPECT_TRUE(b3.within_bound);
}

TEST(Lattice, CensusCoversEveryElement) {
  CensusResult r7 = interval_census(subgroup(7, 2));
  EXPECT_EQ(r7.uncovered, 0u);
  EXPECT_EQ(r7.counts.size(), 1u);
  EXPECT_EQ(r7.counts[0], 2u);
  EXPECT_THROW(interval_census(subgroup(13, 2)), std::domain_error);
  for (u64 p : primes_in(3, 3000)) {
    for (u64 m : divisors(p - 1)) {
      u64 d = (p - 1) / m;
      if (d % 2 == 0 || d < 3) continue;
      ASSERT_EQ(interval_census(subgroup(p, m)).uncovered, 0u) << p << " " << m;
    }
  }
}

TEST(Lattice, MersenneRhoIsTiny) {
  const u64 p = 2147483647;
  EXPECT_EQ(powmod(2, 31, p), 1u);
  EXPECT_EQ(rho2(2, p).rho, 2u);
}

TEST(Lattice, ExceptionalExamples) {
  EXPECT_TRUE(exceptional_primes_direct(3, 10, 3, 1000).empty());
  EXPECT_TRUE(exceptional_primes_cyclotomic(3, 10, 3, 1000).empty());
  auto a = exceptional_primes_direct(4, 2, 3, 100), b = exceptional_primes_cyclotomic(4, 2, 3, 100);
  EXPECT_EQ(a, b);
  for (double D : {5.0, 8.0}) {
    for (double R : {3.0, 6.0}) EXPECT_EQ(exceptional_primes_direct(D, R, 3, 3000), exceptional_primes_cyclotomic(D, R, 3, 3000));
  }
  ExceptionalSet e = exceptional_primes(6, 5, 3, 5000);
  EXPECT_TRUE(e.routes_agree);
  // p = 7: 2 has order 3 and rho2 = 2
  EXPECT_NE(std::find(e.primes.begin(), e.primes.end(), 7ull), e.primes.end());
}
