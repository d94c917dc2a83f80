#pragma once

// Integer arithmetic mod p and the multiplicative structure of F_p^*:
// primality, factorization, primitive roots, discrete logarithms,
// subgroups, divisor functions and cyclotomic polynomials.

#include "lmom/errors.hpp"
#include "lmom/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lmom {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Least non-negative residue of a mod m.
inline u64 mod(i64 a, u64 m) {
  i64 r = a % static_cast<i64>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

// Residue in (-m/2, m/2].
inline i64 signed_residue(i64 a, u64 m) {
  i64 r = static_cast<i64>(mod(a, m));
  if (2 * r > static_cast<i64>(m)) r -= static_cast<i64>(m);
  return r;
}

inline u64 invmod(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    i64 q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw std::domain_error("invmod: " + std::to_string(a) + " not invertible mod " + std::to_string(m));
  return mod(t, m);
}

// Deterministic Miller-Rabin; the first twelve prime bases are exact below 3.3e24,
// which covers every 64-bit input.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  static constexpr u64 kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 q : kBases) {
    if (n % q == 0) return n == q;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

struct PrimePower {
  u64 prime;
  int exponent;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

// Trial division; intended for n up to ~1e12 at desk scale.
inline std::vector<PrimePower> factorize(u64 n) {
  std::vector<PrimePower> out;
  if (n < 2) return out;
  auto take = [&](u64 q) {
    int e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e > 0) out.push_back({q, e});
  };
  take(2);
  take(3);
  for (u64 q = 5; q * q <= n; q += 6) {
    take(q);
    take(q + 2);
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

inline u64 euler_phi(u64 n) {
  if (n == 0) throw std::domain_error("euler_phi: n must be positive");
  u64 phi = n;
  for (auto [q, e] : factorize(n)) phi = phi / q * (q - 1);
  return phi;
}

inline std::vector<u64> divisors(u64 n) {
  std::vector<u64> ds{1};
  for (auto [q, e] : factorize(n)) {
    std::size_t base = ds.size();
    u64 pw = 1;
    for (int j = 1; j <= e; ++j) {
      pw *= q;
      for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pw);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}

inline std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (u64 i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

inline std::vector<u64> primes_in(u64 lo, u64 hi) {
  std::vector<u64> out;
  for (u64 q : primes_up_to(hi)) {
    if (q >= lo) out.push_back(q);
  }
  return out;
}

inline void require_prime(u64 p, const char* where) {
  if (!is_prime(p)) throw std::domain_error(std::string(where) + ": " + std::to_string(p) + " is not prime");
}

// Least primitive root mod p.
inline u64 primitive_root(u64 p) {
  require_prime(p, "primitive_root");
  if (p == 2) return 1;
  auto fs = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = std::all_of(fs.begin(), fs.end(), [&](const PrimePower& f) { return powmod(g, (p - 1) / f.prime, p) != 1; });
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

// Prime modulus with its least primitive root and a discrete-log oracle.
// Below kTableLimit the logarithm and power maps are flat tables; above it,
// logarithms come from baby-step/giant-step.
class PrimeContext {
 public:
  static constexpr u64 kTableLimit = 10'000'000;

  explicit PrimeContext(u64 p, bool force_no_table = false)
      : p_(p), g_(primitive_root(p)), factors_(factorize(p - 1)) {
    if (p <= kTableLimit && !force_no_table) {
      pow_.resize(p - 1);
      dlog_.resize(p, 0);
      u64 x = 1;
      for (u64 t = 0; t + 1 < p; ++t) {
        pow_[t] = static_cast<std::uint32_t>(x);
        dlog_[x] = static_cast<std::uint32_t>(t);
        x = mulmod(x, g_, p);
      }
    } else {
      baby_ = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(p - 1))));
      baby_table_.reserve(baby_);
      u64 x = 1;
      for (u64 j = 0; j < baby_; ++j) {
        baby_table_.emplace(x, j);
        x = mulmod(x, g_, p);
      }
      giant_ = invmod(powmod(g_, baby_, p), p);
    }
  }

  static std::shared_ptr<const PrimeContext> make(u64 p) { return std::make_shared<const PrimeContext>(p); }

  u64 p() const { return p_; }
  u64 g() const { return g_; }
  u64 group_order() const { return p_ - 1; }
  bool has_table() const { return !pow_.empty(); }
  const std::vector<PrimePower>& order_factors() const { return factors_; }

  // t in [0, p-2] with g^t = x.
  u64 dlog(u64 x) const {
    x %= p_;
    if (x == 0) throw std::domain_error("dlog: argument divisible by p");
    if (has_table()) return dlog_[x];
    u64 y = x;
    for (u64 i = 0; i <= baby_; ++i) {
      if (auto it = baby_table_.find(y); it != baby_table_.end()) return (i * baby_ + it->second) % (p_ - 1);
      y = mulmod(y, giant_, p_);
    }
    throw std::logic_error("dlog: not found");
  }

  // g^t mod p.
  u64 power(u64 t) const {
    t %= (p_ - 1);
    return has_table() ? pow_[t] : powmod(g_, t, p_);
  }

 private:
  u64 p_;
  u64 g_;
  std::vector<PrimePower> factors_;
  std::vector<std::uint32_t> pow_;
  std::vector<std::uint32_t> dlog_;
  u64 baby_ = 0;
  u64 giant_ = 0;
  std::unordered_map<u64, u64> baby_table_;
};

using ContextPtr = std::shared_ptr<const PrimeContext>;

inline ContextPtr dlog_table(u64 p) { return PrimeContext::make(p); }

// Least d >= 1 with lambda^d = 1 mod p.
inline u64 multiplicative_order(u64 lambda, const PrimeContext& ctx) {
  const u64 p = ctx.p();
  if (lambda % p == 0) throw std::domain_error("multiplicative_order: argument divisible by p");
  if (ctx.has_table()) return (p - 1) / std::gcd(p - 1, ctx.dlog(lambda));
  // Without a table: strip prime factors from p-1 while the power stays 1.
  u64 d = p - 1;
  for (auto [q, e] : ctx.order_factors()) {
    for (int i = 0; i < e && powmod(lambda, d / q, p) == 1; ++i) d /= q;
  }
  return d;
}

// The subgroup G_m of index m, order d = (p-1)/m.
struct SubgroupSpec {
  ContextPtr ctx;
  u64 m = 0;
  u64 d = 0;
  std::vector<u64> elements;  // sorted

  u64 p() const { return ctx->p(); }
  bool contains(u64 x) const {
    x %= p();
    return x != 0 && powmod(x, d, p()) == 1;
  }
};

inline SubgroupSpec subgroup(ContextPtr ctx, u64 m) {
  const u64 p = ctx->p();
  if (m == 0 || (p - 1) % m != 0) {
    throw std::domain_error("subgroup: index " + std::to_string(m) + " does not divide p-1 = " + std::to_string(p - 1));
  }
  SubgroupSpec s;
  s.m = m;
  s.d = (p - 1) / m;
  s.elements.reserve(s.d);
  for (u64 j = 0; j < s.d; ++j) s.elements.push_back(ctx->power(m * j));
  std::sort(s.elements.begin(), s.elements.end());
  s.ctx = std::move(ctx);
  return s;
}

inline SubgroupSpec subgroup(u64 p, u64 m) {
  require_prime(p, "subgroup");
  return subgroup(PrimeContext::make(p), m);
}

// C(n, k) for moderate arguments; throws on overflow.
inline u64 binomial(u64 n, u64 k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (u64 i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > u128(~u64(0))) throw std::overflow_error("binomial overflow");
  }
  return static_cast<u64>(r);
}

// Number of ordered k-tuples of positive integers with product n.
inline u64 tau_k(u64 k, u64 n) {
  if (k == 0 || n == 0) throw std::domain_error("tau_k: k and n must be positive");
  u64 r = 1;
  for (auto [q, e] : factorize(n)) r *= binomial(static_cast<u64>(e) + k - 1, k - 1);
  return r;
}

// tau_k(n) for all n in [0, limit] by a linear sieve (entry 0 unused).
inline std::vector<std::uint32_t> tau_k_sieve(u64 k, u64 limit) {
  std::vector<std::uint32_t> tau(limit + 1, 0);
  if (limit == 0) return tau;
  std::vector<std::uint32_t> spf_exp(limit + 1, 0);  // exponent of the smallest prime factor
  std::vector<std::uint32_t> rest(limit + 1, 0);     // n with the smallest prime power removed
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> local(64, 0);
  for (u64 e = 0; e < local.size(); ++e) local[e] = static_cast<std::uint32_t>(binomial(e + k - 1, k - 1));
  tau[1] = 1;
  for (u64 n = 2; n <= limit; ++n) {
    if (spf_exp[n] == 0) {
      primes.push_back(static_cast<std::uint32_t>(n));
      spf_exp[n] = 1;
      rest[n] = 1;
    }
    tau[n] = local[spf_exp[n]] * tau[rest[n]];
    for (std::uint32_t q : primes) {
      u64 nq = n * q;
      if (nq > limit) break;
      if (n % q == 0) {
        spf_exp[nq] = spf_exp[n] + 1;
        rest[nq] = rest[n];
        break;
      }
      spf_exp[nq] = 1;
      rest[nq] = static_cast<std::uint32_t>(n);
    }
  }
  return tau;
}

// Calls f(n, tau_k(n)) for n = 1..limit in increasing order, sieving in
// segments so memory stays O(sqrt(limit) + segment).
template <class F>
void for_each_tau_k(u64 k, u64 limit, F&& f, u64 segment = 1u << 18) {
  if (k == 0) throw std::domain_error("for_each_tau_k: k must be positive");
  if (limit == 0) return;
  const std::vector<u64> small = primes_up_to(static_cast<u64>(std::sqrt(static_cast<double>(limit))) + 1);
  std::vector<u64> local(64);
  for (u64 e = 0; e < local.size(); ++e) local[e] = binomial(e + k - 1, k - 1);
  std::vector<u64> rest(segment), tau(segment);
  for (u64 lo = 1; lo <= limit; lo += segment) {
    const u64 hi = std::min(limit, lo + segment - 1);
    const u64 len = hi - lo + 1;
    for (u64 i = 0; i < len; ++i) {
      rest[i] = lo + i;
      tau[i] = 1;
    }
    for (u64 q : small) {
      if (q * q > hi) break;
      for (u64 n = ((lo + q - 1) / q) * q; n <= hi; n += q) {
        u64& r = rest[n - lo];
        int e = 0;
        while (r % q == 0) {
          r /= q;
          ++e;
        }
        tau[n - lo] *= local[e];
      }
    }
    for (u64 i = 0; i < len; ++i) {
      if (rest[i] > 1) tau[i] *= k;  // one prime factor above sqrt(hi)
      f(lo + i, tau[i]);
    }
  }
}

// Coefficients a_0..a_phi(d) of the d-th cyclotomic polynomial, obtained by
// dividing x^d - 1 by the cyclotomic polynomials of the proper divisors.
inline std::vector<i64> cyclotomic_coeffs(u64 d) {
  if (d == 0) throw std::domain_error("cyclotomic_coeffs: d must be positive");
  std::unordered_map<u64, std::vector<i64>> cache;
  auto build = [&](auto&& self, u64 n) -> const std::vector<i64>& {
    if (auto it = cache.find(n); it != cache.end()) return it->second;
    std::vector<i64> num(n + 1, 0);
    num[0] = -1;
    num[n] = 1;
    for (u64 e : divisors(n)) {
      if (e == n) continue;
      const std::vector<i64>& div = self(self, e);
      // Exact division by a monic polynomial.
      std::size_t dn = div.size() - 1;
      std::vector<i64> quot(num.size() - dn, 0);
      for (std::size_t i = num.size(); i-- > dn;) {
        i64 c = num[i];
        quot[i - dn] = c;
        if (c != 0) {
          for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * div[j];
        }
      }
      num = std::move(quot);
    }
    return cache.emplace(n, std::move(num)).first->second;
  };
  return build(build, d);
}

}  // namespace lmom
