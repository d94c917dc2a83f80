#pragma once

// Farey-type sets F_Q = {r/s : 1 <= r, s <= Q, gcd(r, s) = 1}, their k-fold
// product sets, and the count V(p, G_m, l) of subgroup elements of the form
// r/s mod p with |r|, |s| <= l.

#include "lmom/errors.hpp"
#include "lmom/lattice.hpp"
#include "lmom/ntcore.hpp"
#include "lmom/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

namespace lmom {

struct Fraction {
  i64 num = 0;
  i64 den = 1;

  static Fraction reduced(i64 n, i64 d) {
    if (d == 0) throw std::domain_error("Fraction: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    i64 g = std::gcd(n < 0 ? -n : n, d);
    return {n / g, d / g};
  }
  Fraction operator*(const Fraction& o) const { return reduced(num * o.num, den * o.den); }
  bool operator==(const Fraction&) const = default;
  // by value
  std::strong_ordering operator<=>(const Fraction& o) const { return i128(num) * o.den <=> i128(o.num) * den; }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

struct FareySet {
  u64 Q = 0;
  std::vector<Fraction> elements;  // ascending
};

inline FareySet farey_set(u64 Q) {
  if (Q < 1) throw std::domain_error("farey_set: Q must be at least 1");
  FareySet out;
  out.Q = Q;
  for (u64 r = 1; r <= Q; ++r) {
    for (u64 s = 1; s <= Q; ++s) {
      if (std::gcd(r, s) == 1) out.elements.push_back({static_cast<i64>(r), static_cast<i64>(s)});
    }
  }
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

// 2 sum_{q <= Q} phi(q) - 1.
inline u64 farey_size(u64 Q) {
  u64 acc = 0;
  for (u64 q = 1; q <= Q; ++q) acc += euler_phi(q);
  return 2 * acc - 1;
}

inline constexpr double kProductWorkCap = 1e7;

namespace detail {
inline void sort_unique(std::vector<Fraction>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}
}  // namespace detail

// A^{(k)} = {a_1 ... a_k : a_j in A}, by repeated pairwise products with
// deduplication. Each pairwise step costs |A^{(j)}| |A| and is capped.
inline std::vector<Fraction> product_set(std::vector<Fraction> A, int k) {
  if (k < 1) throw std::domain_error("product_set: k must be at least 1");
  detail::sort_unique(A);
  std::vector<Fraction> cur = A;
  for (int j = 1; j < k; ++j) {
    if (static_cast<double>(cur.size()) * static_cast<double>(A.size()) > kProductWorkCap) {
      throw feasibility_error("product_set: pairwise product count above 1e7");
    }
    auto parts = par::map<std::vector<Fraction>>(A.size(), [&](std::size_t i) {
      std::vector<Fraction> row;
      row.reserve(cur.size());
      for (const Fraction& c : cur) row.push_back(c * A[i]);
      detail::sort_unique(row);
      return row;
    });
    std::vector<Fraction> next;
    for (auto& row : parts) next.insert(next.end(), row.begin(), row.end());
    detail::sort_unique(next);
    cur = std::move(next);
  }
  return cur;
}

// Reference: every ordered k-tuple.
inline std::vector<Fraction> product_set_naive(const std::vector<Fraction>& A, int k) {
  std::vector<Fraction> out;
  std::vector<std::size_t> idx(k, 0);
  if (A.empty()) return out;
  for (;;) {
    Fraction f{1, 1};
    for (std::size_t i : idx) f = f * A[i];
    out.push_back(f);
    int j = 0;
    while (j < k && idx[j] + 1 == A.size()) idx[j++] = 0;
    if (j == k) break;
    ++idx[j];
  }
  detail::sort_unique(out);
  return out;
}

struct ProductReport {
  u64 Q = 0;
  int k = 1;
  u64 base = 0;     // |A|
  u64 product = 0;  // |A^(k)|
  double ratio = 0;       // |A^(k)| / |A|^k
  double implied_c = 0;   // C with ratio = exp(-C log Q / log log Q), Q >= 3
};

inline ProductReport farey_product_report(u64 Q, int k) {
  ProductReport r;
  r.Q = Q;
  r.k = k;
  auto A = farey_set(Q).elements;
  r.base = A.size();
  r.product = product_set(A, k).size();
  r.ratio = static_cast<double>(r.product) / std::pow(static_cast<double>(r.base), k);
  if (Q >= 3) {
    double lq = std::log(static_cast<double>(Q));
    r.implied_c = -std::log(r.ratio) * std::log(lq) / lq;
  }
  return r;
}

// V(p, G_m, l) = #{lambda in G_m : lambda = r/s mod p, |r|, |s| <= l}.
inline u64 subgroup_fraction_count(const SubgroupSpec& spec, u64 l) {
  const u64 p = spec.p();
  if (l < 1 || l >= p) throw std::domain_error("subgroup_fraction_count: need 1 <= l < p");
  std::vector<char> seen(p, 0);
  for (u64 s = 1; s <= l; ++s) {
    const u64 inv = invmod(s, p);
    for (i64 r = -static_cast<i64>(l); r <= static_cast<i64>(l); ++r) {
      if (r == 0) continue;
      seen[mulmod(mod(r, p), inv, p)] = 1;
    }
  }
  u64 count = 0;
  for (u64 x : spec.elements) count += seen[x] ? 1 : 0;
  return count;
}

// #{lambda in G_m : rho_2(lambda, p) <= bound}.
inline u64 subgroup_rho2_count(const SubgroupSpec& spec, u64 bound) {
  u64 count = 0;
  for (u64 x : spec.elements) count += rho2(x, spec.p()).rho <= bound ? 1 : 0;
  return count;
}

}  // namespace lmom
