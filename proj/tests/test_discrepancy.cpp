#include "lmom/discrepancy.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace lmom;

TEST(Discrepancy, SinglePoint) {
  PointSet2 ps;
  ps.points = {{0.25, 0.5}};
  EXPECT_NEAR(star_discrepancy(ps), star_discrepancy_bruteforce(ps), 1e-15);
  EXPECT_NEAR(star_discrepancy(ps), 1 - 0.25 * 0.5, 1e-15);
}

TEST(Discrepancy, ExactMatchesOracles) {
  for (u64 p : primes_up_to(31)) {
    for (u64 l = 1; l < p; ++l) {
      Rational exact = star_discrepancy_exact(l, p);
      ASSERT_EQ(exact, star_discrepancy_bruteforce(l, p));
      auto ps = lattice_points(l, p);
      ASSERT_NEAR(star_discrepancy(ps), exact.to_double(), 1e-12);
      ASSERT_NEAR(star_discrepancy_bruteforce(ps), exact.to_double(), 1e-12);
    }
  }
  // (2, 5): 25-candidate sweep
  EXPECT_EQ(star_discrepancy_exact(2, 5), star_discrepancy_bruteforce(2, 5));
}

TEST(Discrepancy, Diagonal) {
  // points (i/p, i/p): D* = 1/p (box [0,1/p)^2 side, closed box counts one point over area)
  for (u64 p : {5ull, 11ull, 101ull}) {
    Rational d = star_discrepancy_exact(1, p);
    EXPECT_EQ(d, star_discrepancy_bruteforce(1, p));
    EXPECT_GE(d.to_double(), 1.0 / static_cast<double>(p));
  }
}

TEST(Discrepancy, Caps) {
  EXPECT_THROW(star_discrepancy_exact(2, 5003), feasibility_error);
  EXPECT_THROW(ks_bound(2, 101, 1), std::domain_error);
}

TEST(Discrepancy, KsBound) {
  KsBound b = ks_bound(1, 101, 2);
  EXPECT_NEAR(b.bound, kKoksmaSzuszConstant * (0.5 + 2.5), 1e-12);
  EXPECT_GE(ks_bound(2, 101, 10).bound, star_discrepancy_exact(2, 101).to_double());
  KsBound env = ks_envelope(2, 101);
  for (i64 H = 2; H <= 128; H *= 2) EXPECT_LE(env.bound, ks_bound(2, 101, H).bound);
}

TEST(Discrepancy, DedekindComparison) {
  auto r = dedekind_vs_discrepancy(1, 7);
  EXPECT_NEAR(r.s_abs, 5.0 / 14, 1e-15);
  EXPECT_NEAR(r.p_d_star, 7 * star_discrepancy_exact(1, 7).to_double(), 1e-12);
  EXPECT_TRUE(r.within);
  auto twin = dedekind_vs_discrepancy(6, 7);
  EXPECT_NEAR(twin.s_abs, r.s_abs, 1e-15);
  auto m = dedekind_vs_discrepancy(2, 4099);
  EXPECT_TRUE(m.within);
  EXPECT_THROW(dedekind_vs_discrepancy(2, 8191), feasibility_error);
}
