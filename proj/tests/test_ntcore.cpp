#include "lmom/ntcore.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace lmom;

TEST(Ntcore, ModularBasics) {
  EXPECT_EQ(powmod(2, 10, 1000), 24u);
  EXPECT_EQ(mod(-3, 7), 4u);
  EXPECT_EQ(signed_residue(6, 7), -1);
  EXPECT_EQ(signed_residue(3, 7), 3);
  for (u64 a = 1; a < 101; ++a) EXPECT_EQ(mulmod(a, invmod(a, 101), 101), 1u);
}

TEST(Ntcore, PrimalityMatchesSieve) {
  auto ps = primes_up_to(10000);
  std::set<u64> s(ps.begin(), ps.end());
  for (u64 n = 0; n <= 10000; ++n) EXPECT_EQ(is_prime(n), s.count(n) == 1) << n;
  EXPECT_TRUE(is_prime(2147483647));
  EXPECT_FALSE(is_prime(2147483649ull));
  EXPECT_EQ(primes_in(10, 30), (std::vector<u64>{11, 13, 17, 19, 23, 29}));
}

TEST(Ntcore, EulerPhiAndDivisors) {
  EXPECT_EQ(euler_phi(1), 1u);
  EXPECT_EQ(euler_phi(12), 4u);
  for (u64 n = 1; n <= 500; ++n) {
    u64 count = 0;
    for (u64 a = 1; a <= n; ++a) count += std::gcd(a, n) == 1;
    EXPECT_EQ(euler_phi(n), count);
    u64 acc = 0;
    for (u64 d : divisors(n)) acc += euler_phi(d);
    EXPECT_EQ(acc, n);
  }
  EXPECT_EQ(divisors(12), (std::vector<u64>{1, 2, 3, 4, 6, 12}));
}

TEST(Ntcore, PrimitiveRootAndOrder) {
  EXPECT_EQ(primitive_root(7), 3u);
  PrimeContext ctx(7);
  EXPECT_EQ(multiplicative_order(1, ctx), 1u);
  EXPECT_EQ(multiplicative_order(2, ctx), 3u);
  EXPECT_EQ(multiplicative_order(3, ctx), 6u);
  for (u64 p : primes_in(3, 2000)) {
    PrimeContext c(p);
    EXPECT_EQ(multiplicative_order(c.g(), c), p - 1);
  }
}

TEST(Ntcore, DlogWithAndWithoutTable) {
  for (u64 p : {101ull, 7919ull}) {
    PrimeContext table(p), bsgs(p, true);
    EXPECT_TRUE(table.has_table());
    EXPECT_FALSE(bsgs.has_table());
    for (u64 x = 1; x < p; x += 7) {
      EXPECT_EQ(table.dlog(x), bsgs.dlog(x));
      EXPECT_EQ(table.power(table.dlog(x)), x);
    }
  }
}

TEST(Ntcore, SubgroupExamples) {
  EXPECT_EQ(subgroup(7, 2).elements, (std::vector<u64>{1, 2, 4}));
  EXPECT_EQ(subgroup(7, 6).elements, (std::vector<u64>{1}));
  EXPECT_EQ(subgroup(13, 4).elements, (std::vector<u64>{1, 3, 9}));
  EXPECT_THROW(subgroup(7, 4), std::domain_error);
  EXPECT_THROW(subgroup(9, 2), std::domain_error);
}

TEST(Ntcore, SubgroupsAreGroupsOfRightSize) {
  for (u64 p : primes_in(3, 2000)) {
    auto ctx = PrimeContext::make(p);
    for (u64 m : divisors(p - 1)) {
      auto s = subgroup(ctx, m);
      ASSERT_EQ(s.elements.size(), (p - 1) / m);
      std::set<u64> set(s.elements.begin(), s.elements.end());
      ASSERT_EQ(set.size(), s.elements.size());
      ASSERT_TRUE(set.count(1));
      // closed under multiplication by a generator x = g^m
      const u64 x = ctx->power(m % (p - 1));
      for (u64 e : s.elements) ASSERT_TRUE(set.count(mulmod(e, x, p)));
      ASSERT_TRUE(s.contains(x));
    }
  }
}

TEST(Ntcore, TauExamplesAndMultiplicativity) {
  EXPECT_EQ(tau_k(2, 6), 4u);
  EXPECT_EQ(tau_k(3, 4), 6u);
  for (u64 k = 1; k <= 5; ++k) EXPECT_EQ(tau_k(k, 1), 1u);
  for (u64 k = 1; k <= 4; ++k) {
    auto sieve = tau_k_sieve(k, 3000);
    for (u64 m = 1; m <= 50; ++m) {
      for (u64 n = 1; n <= 50; ++n) {
        if (std::gcd(m, n) == 1) ASSERT_EQ(tau_k(k, m * n), tau_k(k, m) * tau_k(k, n));
        ASSERT_EQ(sieve[m * n], tau_k(k, m * n));
      }
    }
  }
  // tau_2 is the divisor count
  for (u64 n = 1; n <= 1000; ++n) EXPECT_EQ(tau_k(2, n), divisors(n).size());
}

TEST(Ntcore, SegmentedTauMatchesSieve) {
  for (u64 k : {2ull, 3ull}) {
    auto sieve = tau_k_sieve(k, 20000);
    u64 expected = 1;
    for_each_tau_k(k, 20000, [&](u64 n, u64 t) {
      ASSERT_EQ(n, expected++);
      ASSERT_EQ(t, sieve[n]);
    }, 1000);
    EXPECT_EQ(expected, 20001u);
  }
}

TEST(Ntcore, Cyclotomic) {
  EXPECT_EQ(cyclotomic_coeffs(1), (std::vector<i64>{-1, 1}));
  EXPECT_EQ(cyclotomic_coeffs(6), (std::vector<i64>{1, -1, 1}));
  auto c105 = cyclotomic_coeffs(105);
  EXPECT_EQ(*std::min_element(c105.begin(), c105.end()), -2);
  for (u64 d = 1; d <= 200; ++d) {
    auto c = cyclotomic_coeffs(d);
    EXPECT_EQ(c.size(), euler_phi(d) + 1) << d;
    EXPECT_EQ(c.back(), 1);
  }
}
