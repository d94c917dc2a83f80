#pragma once

// Dedekind sums s(c,d) = sum_{a=1}^{d-1} ((a/d)) ((ac/d)), their mod-p tables,
// subgroup sums, correlation sums and k-fold multiplicative correlations.

#include "lmom/errors.hpp"
#include "lmom/fft.hpp"
#include "lmom/ntcore.hpp"
#include "lmom/parallel.hpp"
#include "lmom/rational.hpp"

#include <cmath>
#include <cstdint>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace lmom {

// ((x)): fractional part minus 1/2 off the integers, 0 on them.
inline Rational sawtooth(const Rational& x) {
  if (x.is_integer()) return Rational{};
  return x - Rational::from_integer(x.floor()) - make_rational(1, 2);
}

namespace detail {

inline void require_coprime(i64 c, i64 d, const char* where) {
  if (d < 1) throw std::domain_error(std::string(where) + ": d must be positive");
  if (std::gcd(c < 0 ? -c : c, d) != 1) {
    throw std::domain_error(std::string(where) + ": gcd(" + std::to_string(c) + ", " + std::to_string(d) + ") != 1");
  }
}

// Reciprocity recursion s(c,d) = -1/4 + (c^2 + d^2 + 1)/(12cd) - s(d mod c, c),
// unrolled bottom-up so each partial value keeps denominator dividing 6d.
template <class Int>
basic_rational<Int> dedekind_reciprocity(i64 c, i64 d) {
  std::vector<std::pair<i64, i64>> chain;
  i64 cc = static_cast<i64>(mod(c, static_cast<u64>(d)));
  i64 dd = d;
  while (dd > 1) {
    chain.emplace_back(cc, dd);
    i64 next = dd % cc;
    dd = cc;
    cc = next;
  }
  basic_rational<Int> v;
  const basic_rational<Int> quarter(Int(1), Int(4));
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Int a = it->first, b = it->second;
    basic_rational<Int> t(a * a + b * b + 1, Int(12) * a * b);
    v = t - quarter - v;
  }
  return v;
}

}  // namespace detail

// Direct O(d) summation over the common denominator 4d^2.
inline Rational dedekind_naive(i64 c, i64 d) {
  detail::require_coprime(c, d, "dedekind_naive");
  const u64 cm = mod(c, static_cast<u64>(d));
  i128 acc = 0;
  for (i64 a = 1; a < d; ++a) {
    i64 b = static_cast<i64>(mulmod(static_cast<u64>(a), cm, static_cast<u64>(d)));
    acc += i128(2 * a - d) * i128(2 * b - d);
  }
  return Rational(detail::to_big(acc), BigInt(4) * BigInt(d) * BigInt(d));
}

// O(log d) evaluation by the reciprocity law.
inline Rational dedekind_fast(i64 c, i64 d) {
  detail::require_coprime(c, d, "dedekind_fast");
  if (d < (i64(1) << 40)) return detail::dedekind_reciprocity<i128>(c, d).convert<BigInt>();
  return detail::dedekind_reciprocity<BigInt>(c, d);
}

enum class DedekindMethod { naive, reciprocity, cf };

inline const char* to_string(DedekindMethod m) {
  switch (m) {
    case DedekindMethod::naive: return "naive";
    case DedekindMethod::reciprocity: return "reciprocity";
    case DedekindMethod::cf: return "cf";
  }
  return "?";
}

struct DedekindValue {
  Rational value;
  i64 c = 0;
  i64 d = 1;
  DedekindMethod method = DedekindMethod::reciprocity;
};

inline DedekindValue dedekind(i64 c, i64 d, DedekindMethod method = DedekindMethod::reciprocity) {
  switch (method) {
    case DedekindMethod::naive: return {dedekind_naive(c, d), c, d, method};
    case DedekindMethod::reciprocity: return {dedekind_fast(c, d), c, d, method};
    case DedekindMethod::cf: break;
  }
  throw std::invalid_argument("dedekind: the cf method is approximate, use dedekind_cf");
}

// Closed forms used as anchors.
inline Rational dedekind_one(i64 d) { return make_rational((d - 1) * (d - 2), 12 * d); }
inline Rational dedekind_two_odd(i64 d) {
  return Rational(BigInt(d - 1) * BigInt(d - 5), BigInt(24) * BigInt(d));
}

struct CfApprox {
  double approx = 0;
  std::vector<i64> quotients;  // b_1..b_kappa of a/p = [0; b_1, ..., b_kappa]
};

// Alternating sum of the partial quotients of a/p, divided by 12. Differs
// from s(a,p) by a bounded amount.
inline CfApprox dedekind_cf(i64 a, i64 p) {
  if (p < 2 || a < 1 || a >= p) throw std::domain_error("dedekind_cf: need 1 <= a < p");
  CfApprox out;
  i64 num = p, den = a;  // continued fraction of p/a gives b_1, b_2, ...
  while (den != 0) {
    out.quotients.push_back(num / den);
    i64 r = num % den;
    num = den;
    den = r;
  }
  i64 alt = 0;
  for (std::size_t j = 0; j < out.quotients.size(); ++j) alt += (j % 2 == 0 ? 1 : -1) * out.quotients[j];
  out.approx = static_cast<double>(alt) / 12.0;
  return out;
}

// s(c,p) for every residue c of a prime p, stored as the integers 6p*s(c,p).
class DedekindTable {
 public:
  explicit DedekindTable(u64 p) : p_(p), scaled_(p, 0) {
    require_prime(p, "DedekindTable");
    if (p > PrimeContext::kTableLimit) throw feasibility_error("DedekindTable: p above table limit");
    const i64 pp = static_cast<i64>(p);
    const i128 six_p = 6 * i128(pp);
    const u64 half = (p - 1) / 2;
    par::for_each_index(half, [&](std::size_t i) {
      i64 c = static_cast<i64>(i) + 1;
      FastRational s = detail::dedekind_reciprocity<i128>(c, pp);
      i128 scaled = s.num() * (six_p / s.den());
      if (six_p % s.den() != 0) throw std::logic_error("DedekindTable: 6p*s(c,p) not integral");
      scaled_[c] = static_cast<i64>(scaled);
      scaled_[pp - c] = -static_cast<i64>(scaled);
    });
  }

  u64 p() const { return p_; }
  // 6p * s(c mod p, p); zero for c = 0 mod p.
  i64 scaled(u64 c) const { return scaled_[c % p_]; }
  Rational value(u64 c) const { return make_rational(scaled(c), 6 * static_cast<i64>(p_)); }
  double as_double(u64 c) const { return static_cast<double>(scaled(c)) / (6.0 * static_cast<double>(p_)); }
  const std::vector<i64>& scaled_values() const { return scaled_; }
  i64 denominator() const { return 6 * static_cast<i64>(p_); }

 private:
  u64 p_;
  std::vector<i64> scaled_;
};

// S(p,m): sum of s(lambda,p) over lambda in G_m, lambda != 1.
inline Rational subgroup_sum(const SubgroupSpec& spec) {
  Rational acc;
  const i64 p = static_cast<i64>(spec.p());
  for (u64 x : spec.elements) {
    if (x != 1) acc += dedekind_fast(static_cast<i64>(x), p);
  }
  return acc;
}

struct CorrelationValue {
  u64 p = 0;
  i64 k1 = 0;
  i64 k2 = 0;
  Rational value;
};

// sum_{t=1}^{p-1} s(k1 t, p) s(k2 t, p).
inline CorrelationValue correlation(const DedekindTable& table, i64 k1, i64 k2) {
  const u64 p = table.p();
  const u64 a = mod(k1, p), b = mod(k2, p);
  if (a == 0 || b == 0) throw std::domain_error("correlation: p divides k1*k2");
  i128 acc = 0;
  u64 x = 0, y = 0;
  for (u64 t = 1; t < p; ++t) {
    x += a;
    if (x >= p) x -= p;
    y += b;
    if (y >= p) y -= p;
    acc += i128(table.scaled(x)) * table.scaled(y);
  }
  const i64 den = table.denominator();
  return {p, k1, k2, Rational(detail::to_big(acc), BigInt(den) * BigInt(den))};
}

inline CorrelationValue correlation(u64 p, i64 k1, i64 k2) {
  if (mod(k1, p) == 0 || mod(k2, p) == 0) throw std::domain_error("correlation: p divides k1*k2");
  return correlation(DedekindTable(p), k1, k2);
}

// Exact k-fold correlations
//   K_k(lambda) = sum_{t_1..t_{k-1}} s(t_1,p)...s(t_{k-1},p) s(lambda t_1...t_{k-1}, p)
// for every lambda at once. In discrete-log coordinates the inner sum is a
// (k-1)-fold cyclic convolution of u(t) = s(g^t, p), evaluated against u.
class KfoldCorrelation {
 public:
  static constexpr int kMaxDirectK = 4;
  static constexpr double kDirectCap = 1e8;  // p^(k-1)

  KfoldCorrelation(ContextPtr ctx, int k) : ctx_(std::move(ctx)), k_(k) {
    const u64 p = ctx_->p();
    if (k < 1) throw std::domain_error("kfold_correlation: k must be positive");
    if (k > kMaxDirectK || std::pow(static_cast<double>(p), k - 1) > kDirectCap) {
      throw feasibility_error("kfold_correlation: p^(k-1) beyond the direct cap; use the convolution method");
    }
    DedekindTable table(p);
    const std::size_t n = p - 1;
    std::vector<i128> u(n);
    for (std::size_t t = 0; t < n; ++t) u[t] = table.scaled(ctx_->power(t));
    // conv holds the (j)-fold convolution; start with j = 1.
    std::vector<i128> conv = u;
    for (int j = 1; j < k - 1; ++j) {
      std::vector<i128> next(n, 0);
      par::for_each_index(n, [&](std::size_t a) {
        i128 acc = 0;
        for (std::size_t b = 0; b < n; ++b) {
          std::size_t c = a >= b ? a - b : a + n - b;
          acc += conv[b] * u[c];
        }
        next[a] = acc;
      });
      conv = std::move(next);
    }
    // K(g^l) = sum_c conv[c] u[c + l]; for k = 1 it is u[l] itself.
    values_.assign(n, 0);
    if (k == 1) {
      values_ = u;
    } else {
      par::for_each_index(n, [&](std::size_t l) {
        i128 acc = 0;
        for (std::size_t c = 0; c < n; ++c) {
          std::size_t idx = c + l < n ? c + l : c + l - n;
          acc += conv[c] * u[idx];
        }
        values_[l] = acc;
      });
    }
    denominator_ = 1;
    for (int j = 0; j < k; ++j) denominator_ *= BigInt(table.denominator());
  }

  int k() const { return k_; }
  u64 p() const { return ctx_->p(); }

  Rational at(u64 lambda) const {
    u64 l = ctx_->dlog(lambda);
    return Rational(detail::to_big(values_[l]), denominator_);
  }

  // Exact sum of K_k(lambda) over lambda in G_m (including lambda = 1).
  Rational subgroup_total(const SubgroupSpec& spec) const {
    BigInt acc = 0;
    for (u64 x : spec.elements) acc += detail::to_big(values_[ctx_->dlog(x)]);
    return Rational(acc, denominator_);
  }

 private:
  ContextPtr ctx_;
  int k_;
  std::vector<i128> values_;
  BigInt denominator_;
};

inline Rational kfold_correlation(const SubgroupSpec& spec, u64 lambda, int k) {
  if (k < 2) throw std::domain_error("kfold_correlation: k must be at least 2");
  if (lambda % spec.p() == 0) throw std::domain_error("kfold_correlation: lambda divisible by p");
  return KfoldCorrelation(spec.ctx, k).at(lambda);
}

// Floating-point k-fold correlations for all lambda, via FFT of length p-1.
// Returned vector is indexed by lambda (entry 0 unused).
inline std::vector<double> kfold_correlation_fft(const PrimeContext& ctx, const DedekindTable& table, int k) {
  if (k < 1) throw std::domain_error("kfold_correlation_fft: k must be positive");
  const u64 p = ctx.p();
  const std::size_t n = p - 1;
  std::vector<fft::cplx> u(n);
  for (std::size_t t = 0; t < n; ++t) u[t] = table.as_double(ctx.power(t));
  auto U = fft::forward(u);
  for (std::size_t j = 0; j < n; ++j) {
    fft::cplx cu = std::conj(U[j]);
    fft::cplx w = 1.0;
    for (int i = 0; i < k - 1; ++i) w *= cu;
    U[j] = w * U[j];
  }
  auto r = fft::backward(U);
  std::vector<double> out(p, 0.0);
  for (std::size_t l = 0; l < n; ++l) out[ctx.power(l)] = r[l].real() / static_cast<double>(n);
  return out;
}

// sum_a |s(a,p)|^alpha, summed in ascending a.
inline double fractional_moment(const DedekindTable& table, double alpha) {
  double acc = 0;
  for (u64 a = 1; a < table.p(); ++a) acc += std::pow(std::fabs(table.as_double(a)), alpha);
  return acc;
}

inline double fractional_moment(u64 p, double alpha) { return fractional_moment(DedekindTable(p), alpha); }

}  // namespace lmom
