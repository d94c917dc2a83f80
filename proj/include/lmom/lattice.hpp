#pragma once

// Congruence lattices {h : h_1 + h_2 lambda + ... + h_s lambda^(s-1) = 0 mod p}
// measured by the product weight r(h) = prod max(|h_j|, 1): minima rho_s,
// weighted box sums sigma_s, Korobov box counts, the interval census of
// rho_2 over a subgroup, and the exceptional prime set E(D, R).

#include "lmom/errors.hpp"
#include "lmom/fft.hpp"
#include "lmom/ntcore.hpp"
#include "lmom/parallel.hpp"
#include "lmom/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace lmom {

inline u64 weight_r(std::span<const i64> h) {
  u64 r = 1;
  for (i64 x : h) r *= static_cast<u64>(std::max<i64>(x < 0 ? -x : x, 1));
  return r;
}

inline u64 weight_r(std::initializer_list<i64> h) { return weight_r(std::span<const i64>(h.begin(), h.size())); }

struct LatticeWitness {
  u64 rho = 0;
  std::vector<i64> witness;
  int s = 2;
  u64 lambda = 0;
  u64 p = 0;
};

// h_1 + h_2 lambda + ... + h_s lambda^(s-1) mod p.
inline u64 lattice_form(std::span<const i64> h, u64 lambda, u64 p) {
  u64 acc = 0, pw = 1 % p;
  for (i64 x : h) {
    acc = (acc + mulmod(mod(x, p), pw, p)) % p;
    pw = mulmod(pw, lambda % p, p);
  }
  return acc;
}

// Minimum of r(h) over nonzero (h_1, h_2) with h_1 + h_2 lambda = 0 mod p.
// For each h_2 >= 1 only the signed least residue h_1 can be optimal, and
// r(h) >= h_2, so the scan stops once h_2 exceeds the best value found.
inline LatticeWitness rho2(u64 lambda, u64 p) {
  if (lambda % p == 0) throw std::domain_error("rho2: lambda divisible by p");
  LatticeWitness w;
  w.lambda = lambda % p;
  w.p = p;
  w.rho = p;
  w.witness = {static_cast<i64>(p), 0};
  for (u64 h2 = 1; h2 < w.rho; ++h2) {
    i64 h1 = signed_residue(-static_cast<i64>(mulmod(w.lambda, h2, p)), p);
    u64 r = static_cast<u64>(std::max<i64>(h1 < 0 ? -h1 : h1, 1)) * h2;
    if (r < w.rho) {
      w.rho = r;
      w.witness = {h1, static_cast<i64>(h2)};
    }
  }
  return w;
}

// Exhaustive reference: every h_2 in [1, p-1] and the h_2 = 0 solution (p, 0).
inline u64 rho2_exhaustive(u64 lambda, u64 p) {
  u64 best = p;
  for (u64 h2 = 1; h2 < p; ++h2) {
    u64 h1 = mod(-static_cast<i64>(mulmod(lambda % p, h2, p)), p);
    u64 a = std::min(h1, p - h1);
    best = std::min(best, std::max<u64>(a, 1) * h2);
  }
  return best;
}

// True iff rho_2(lambda, p) < bound; touches at most bound values of h_2.
inline bool rho2_below(u64 lambda, u64 p, double bound) {
  if (static_cast<double>(p) < bound) return true;
  for (u64 h2 = 1; static_cast<double>(h2) < bound; ++h2) {
    i64 h1 = signed_residue(-static_cast<i64>(mulmod(lambda % p, h2, p)), p);
    double r = static_cast<double>(std::max<i64>(h1 < 0 ? -h1 : h1, 1)) * static_cast<double>(h2);
    if (r < bound) return true;
  }
  return false;
}

// rho_s for s >= 3 by enumeration of the box ||h|| <= search; empty unless
// the minimum is at most search.
inline std::optional<LatticeWitness> rho_s(u64 lambda, u64 p, int s, i64 search = 100) {
  if (s == 2) return rho2(lambda, p);
  if (s < 2) throw std::domain_error("rho_s: s must be at least 2");
  if (search > 100 && s >= 3) throw feasibility_error("rho_s: search box above 100 for s >= 3");
  std::optional<LatticeWitness> best;
  std::vector<i64> h(s, -search);
  std::vector<u64> pw(s);
  pw[0] = 1 % p;
  for (int j = 1; j < s; ++j) pw[j] = mulmod(pw[j - 1], lambda % p, p);
  for (;;) {
    // h_1 is free: pick the signed residue solving the congruence.
    u64 tail = 0;
    for (int j = 1; j < s; ++j) tail = (tail + mulmod(mod(h[j], p), pw[j], p)) % p;
    bool tail_zero = std::all_of(h.begin() + 1, h.end(), [](i64 x) { return x == 0; });
    i64 h1 = signed_residue(-static_cast<i64>(tail), p);
    if (tail_zero) h1 = static_cast<i64>(p);
    if ((h1 < 0 ? -h1 : h1) <= search || tail_zero) {
      std::vector<i64> cand = h;
      cand[0] = h1;
      u64 r = weight_r(cand);
      if (!best || r < best->rho) best = LatticeWitness{r, cand, s, lambda % p, p};
    }
    int j = 1;
    while (j < s && h[j] == search) h[j++] = -search;
    if (j == s) break;
    ++h[j];
  }
  // a vector outside the box has r(h) > search, so only r <= search is certified
  if (best && best->rho > static_cast<u64>(search)) return std::nullopt;
  return best;
}

struct SigmaValue {
  u64 lambda = 0;
  double H = 1;
  int s = 2;
  Rational value;
  std::map<u64, u64> histogram;  // weight r(h) -> number of admissible h
  double as_double() const {
    double acc = 0;
    for (auto [r, c] : histogram) acc += static_cast<double>(c) / static_cast<double>(r);
    return acc;
  }
};

namespace detail {
inline i64 box_radius(double H) {
  if (!(H >= 1)) throw std::domain_error("sigma: H must be at least 1");
  return static_cast<i64>(std::floor(H + 1e-12));
}
}  // namespace detail

// Histogram of r(h) over nonzero h in [-H, H]^s on the lattice. For s = 2,
// each h_2 contributes the arithmetic progression h_1 = -lambda h_2 mod p.
inline std::map<u64, u64> sigma_histogram(u64 lambda, double H, u64 p, int s = 2) {
  const i64 R = detail::box_radius(H);
  std::map<u64, u64> hist;
  if (s == 2) {
    const i64 pp = static_cast<i64>(p);
    for (i64 h2 = -R; h2 <= R; ++h2) {
      i64 r0 = static_cast<i64>(mod(-static_cast<i64>(mulmod(lambda % p, mod(h2, p), p)), p));
      // smallest h1 >= -R with h1 = r0 mod p
      i64 start = r0 - ((r0 + R) / pp) * pp;
      for (i64 h1 = start; h1 <= R; h1 += pp) {
        if (h1 == 0 && h2 == 0) continue;
        ++hist[static_cast<u64>(std::max<i64>(std::abs(h1), 1) * std::max<i64>(std::abs(h2), 1))];
      }
    }
    return hist;
  }
  if (s < 2) throw std::domain_error("sigma: s must be at least 2");
  if (R > 100) throw feasibility_error("sigma: H above 100 for s >= 3");
  std::vector<i64> h(s, -R);
  for (;;) {
    bool zero = std::all_of(h.begin(), h.end(), [](i64 x) { return x == 0; });
    if (!zero && lattice_form(h, lambda, p) == 0) ++hist[weight_r(h)];
    int j = 0;
    while (j < s && h[j] == R) h[j++] = -R;
    if (j == s) break;
    ++h[j];
  }
  return hist;
}

// O(H^2) reference for s = 2: every point of the box.
inline std::map<u64, u64> sigma2_histogram_bruteforce(u64 lambda, double H, u64 p) {
  const i64 R = detail::box_radius(H);
  std::map<u64, u64> hist;
  for (i64 h1 = -R; h1 <= R; ++h1) {
    for (i64 h2 = -R; h2 <= R; ++h2) {
      if (h1 == 0 && h2 == 0) continue;
      if (mod(h1 + static_cast<i64>(lambda % p) * h2, p) == 0) {
        ++hist[static_cast<u64>(std::max<i64>(std::abs(h1), 1) * std::max<i64>(std::abs(h2), 1))];
      }
    }
  }
  return hist;
}

inline SigmaValue sigma(u64 lambda, double H, u64 p, int s = 2) {
  SigmaValue v;
  v.lambda = lambda % p;
  v.H = H;
  v.s = s;
  v.histogram = sigma_histogram(lambda, H, p, s);
  for (auto [r, c] : v.histogram) v.value += make_rational(static_cast<i64>(c), static_cast<i64>(r));
  return v;
}

// sigma_2(lambda, H) in floating point, same enumeration order as the
// progression method.
inline double sigma2_double(u64 lambda, double H, u64 p) {
  const i64 R = detail::box_radius(H);
  const i64 pp = static_cast<i64>(p);
  double acc = 0;
  for (i64 h2 = -R; h2 <= R; ++h2) {
    i64 r0 = static_cast<i64>(mod(-static_cast<i64>(mulmod(lambda % p, mod(h2, p), p)), p));
    i64 start = r0 - ((r0 + R) / pp) * pp;
    const double w2 = static_cast<double>(std::max<i64>(std::abs(h2), 1));
    for (i64 h1 = start; h1 <= R; h1 += pp) {
      if (h1 == 0 && h2 == 0) continue;
      acc += 1.0 / (static_cast<double>(std::max<i64>(std::abs(h1), 1)) * w2);
    }
  }
  return acc;
}

// sigma_2(lambda, H) for every lambda in [1, p-1] at once (entry 0 unused).
// With F(c) = sum_{|h| <= H, h = c mod p} 1/max(|h|,1),
//   sigma_2(lambda, H) = sum_b F(b) F(-lambda b) - 1,
// and the b != 0 part is a cyclic correlation in discrete-log coordinates.
inline std::vector<double> sigma2_all(const PrimeContext& ctx, double H) {
  const u64 p = ctx.p();
  const i64 R = detail::box_radius(H);
  std::vector<double> F(p, 0.0);
  for (i64 h = -R; h <= R; ++h) F[mod(h, p)] += 1.0 / static_cast<double>(std::max<i64>(std::abs(h), 1));
  const std::size_t n = p - 1;
  std::vector<double> x(n);
  for (std::size_t t = 0; t < n; ++t) x[t] = F[ctx.power(t)];
  std::vector<double> corr = n > 1 ? fft::cyclic_correlation(x, x) : std::vector<double>{x[0] * x[0]};
  const u64 shift = ctx.dlog(p - 1);
  std::vector<double> out(p, 0.0);
  for (std::size_t l = 0; l < n; ++l) {
    u64 lambda = ctx.power(l);
    out[lambda] = F[0] * F[0] + corr[(l + shift) % n] - 1.0;
  }
  return out;
}

struct BoxCount {
  u64 count = 0;
  double bound = 0;  // Korobov: 1 if prod H_j <= rho_s, else 4 prod H_j / rho_s
  u64 rho = 0;
  bool within_bound = true;
};

// Lattice points with h_j in (A_j, A_j + H_j] and h_1 + h_2 lambda + ... + a = 0 mod p.
inline BoxCount box_count(u64 lambda, u64 p, std::span<const i64> lows, std::span<const i64> sides, i64 a = 0) {
  const std::size_t s = lows.size();
  if (s < 1 || sides.size() != s) throw std::invalid_argument("box_count: dimension mismatch");
  for (i64 H : sides) {
    if (H < 1) throw std::domain_error("box_count: side lengths must be at least 1");
  }
  const i64 pp = static_cast<i64>(p);
  std::vector<u64> pw(s);
  pw[0] = 1 % p;
  for (std::size_t j = 1; j < s; ++j) pw[j] = mulmod(pw[j - 1], lambda % p, p);
  BoxCount out;
  std::vector<i64> h(s);
  for (std::size_t j = 1; j < s; ++j) h[j] = lows[j] + 1;
  for (;;) {
    u64 tail = mod(a, p);
    for (std::size_t j = 1; j < s; ++j) tail = (tail + mulmod(mod(h[j], p), pw[j], p)) % p;
    // h_1 = -tail mod p within (A_1, A_1 + H_1]
    i64 target = static_cast<i64>(mod(-static_cast<i64>(tail), p));
    i64 lo = lows[0] + 1, hi = lows[0] + sides[0];
    auto count_le = [&](i64 x) {  // #{h <= x : h = target mod p}, shifted to be non-negative
      i64 y = x - target;
      return y >= 0 ? y / pp : -((-y + pp - 1) / pp);
    };
    out.count += static_cast<u64>(count_le(hi) - count_le(lo - 1));
    std::size_t j = 1;
    while (j < s && h[j] == lows[j] + sides[j]) {
      h[j] = lows[j] + 1;
      ++j;
    }
    if (j >= s) break;
    ++h[j];
  }
  double volume = 1;
  for (i64 H : sides) volume *= static_cast<double>(H);
  std::optional<LatticeWitness> rho = s == 2 ? std::optional(rho2(lambda, p)) : (s == 1 ? std::nullopt : rho_s(lambda, p, static_cast<int>(s)));
  if (s == 1) {
    out.rho = p;
  } else if (rho) {
    out.rho = rho->rho;
  }
  if (out.rho > 0) {
    out.bound = volume <= static_cast<double>(out.rho) ? 1.0 : 4.0 * volume / static_cast<double>(out.rho);
    out.within_bound = static_cast<double>(out.count) <= out.bound;
  }
  return out;
}

struct CensusResult {
  u64 p = 0, m = 0, d = 0;
  u64 phi_d = 0;
  double c = 0.5;
  std::vector<u64> counts;  // counts[n-1] for n = 1..phi(d)-1
  u64 uncovered = 0;        // lambda != 1 landing in no interval
};

inline constexpr double kCensusConstant = 0.5;

// Places rho_2(lambda, p), lambda in G_m \ {1}, into the overlapping
// intervals [c p^(n/phi(d)), p^((n+1)/phi(d))].
inline CensusResult interval_census(const SubgroupSpec& spec, double c = kCensusConstant) {
  if (spec.d % 2 == 0) throw std::domain_error("interval_census: subgroup order d must be odd");
  CensusResult out;
  out.p = spec.p();
  out.m = spec.m;
  out.d = spec.d;
  out.c = c;
  out.phi_d = euler_phi(spec.d);
  const double phi = static_cast<double>(out.phi_d);
  const double lp = std::log(static_cast<double>(out.p));
  out.counts.assign(out.phi_d > 1 ? out.phi_d - 1 : 0, 0);
  for (u64 x : spec.elements) {
    if (x == 1) continue;
    double r = static_cast<double>(rho2(x, out.p).rho);
    bool covered = false;
    for (u64 n = 1; n + 1 <= out.phi_d; ++n) {
      double lo = c * std::exp(lp * static_cast<double>(n) / phi);
      double hi = std::exp(lp * static_cast<double>(n + 1) / phi);
      if (r >= lo * (1 - 1e-12) && r <= hi * (1 + 1e-12)) {
        ++out.counts[n - 1];
        covered = true;
      }
    }
    if (!covered) ++out.uncovered;
  }
  return out;
}

// Elements of exact order d in F_p^*, d | p - 1.
inline std::vector<u64> elements_of_order(u64 p, u64 g, u64 d) {
  std::vector<u64> out;
  if ((p - 1) % d != 0) return out;
  u64 zeta = powmod(g, (p - 1) / d, p);
  u64 x = 1;
  for (u64 j = 0; j < d; ++j) {
    if (std::gcd(j, d) == 1) out.push_back(x);
    x = mulmod(x, zeta, p);
  }
  return out;
}

// E(D, R) within [lo, hi]: primes with some lambda of order 3 <= d < D and
// rho_2(lambda, p) < R. Direct scan over the elements of small order.
inline std::vector<u64> exceptional_primes_direct(double D, double R, u64 lo, u64 hi) {
  if (D < 2 || R < 2) throw std::domain_error("exceptional_primes: D, R must be at least 2");
  std::vector<u64> primes = primes_in(std::max<u64>(lo, 2), hi);
  std::vector<char> hit = par::map<char>(primes.size(), [&](std::size_t i) -> char {
    u64 p = primes[i];
    u64 g = 0;
    for (u64 d = 3; static_cast<double>(d) < D; ++d) {
      if ((p - 1) % d != 0) continue;
      if (g == 0) g = primitive_root(p);
      for (u64 x : elements_of_order(p, g, d)) {
        if (rho2_below(x, p, R)) return 1;
      }
    }
    return 0;
  });
  std::vector<u64> out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (hit[i]) out.push_back(primes[i]);
  }
  return out;
}

// Same set through divisibility: if rho_2(lambda, p) = |h_1 h_2| < R then
// lambda = -h_1/h_2 is a root of Phi_d mod p, so p divides
//   N = sum_j (-1)^j a_j h_1^j h_2^(phi(d) - j).
inline std::vector<u64> exceptional_primes_cyclotomic(double D, double R, u64 lo, u64 hi) {
  if (D < 2 || R < 2) throw std::domain_error("exceptional_primes: D, R must be at least 2");
  std::vector<u64> primes = primes_in(std::max<u64>(lo, 2), hi);
  std::vector<char> hit(primes.size(), 0);
  // h_2 = 0 (or h_1 = 0) needs p | h, i.e. p < R, and then every lambda qualifies.
  for (std::size_t i = 0; i < primes.size(); ++i) {
    u64 p = primes[i];
    if (static_cast<double>(p) >= R) continue;
    for (u64 d = 3; static_cast<double>(d) < D; ++d) {
      if ((p - 1) % d == 0) hit[i] = 1;
    }
  }
  for (u64 d = 3; static_cast<double>(d) < D; ++d) {
    std::vector<i64> a = cyclotomic_coeffs(d);
    const std::size_t phi = a.size() - 1;
    for (i64 h2 = 1; static_cast<double>(h2) < R; ++h2) {
      for (i64 h1 = -static_cast<i64>(std::ceil(R)); h1 <= static_cast<i64>(std::ceil(R)); ++h1) {
        if (h1 == 0 || static_cast<double>(std::abs(h1) * h2) >= R) continue;
        BigInt N = 0;
        BigInt x1 = 1;
        for (std::size_t j = 0; j <= phi; ++j) {
          BigInt term = BigInt(a[j]) * x1;
          for (std::size_t e = 0; e < phi - j; ++e) term *= h2;
          N += (j % 2 == 0) ? term : BigInt(-term);
          x1 *= h1;
        }
        if (N == 0) throw std::logic_error("exceptional_primes: vanishing cyclotomic form");
        for (std::size_t i = 0; i < primes.size(); ++i) {
          if (hit[i]) continue;
          u64 p = primes[i];
          if (static_cast<u64>(h2) % p == 0) continue;
          if (BigInt(N % p) != 0) continue;
          u64 lambda = mulmod(mod(-h1, p), invmod(static_cast<u64>(h2) % p, p), p);
          // p | Phi_d(lambda) forces order d unless p | d.
          if (d % p == 0) {
            PrimeContext ctx(p, true);
            if (multiplicative_order(lambda, ctx) != d) continue;
          }
          hit[i] = 1;
        }
      }
    }
  }
  std::vector<u64> out;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (hit[i]) out.push_back(primes[i]);
  }
  return out;
}

struct ExceptionalSet {
  std::vector<u64> primes;
  bool routes_agree = true;
  double shape = 0;  // D^2 R (log R)^2 / log D
};

inline ExceptionalSet exceptional_primes(double D, double R, u64 lo, u64 hi) {
  ExceptionalSet out;
  out.primes = exceptional_primes_direct(D, R, lo, hi);
  out.routes_agree = out.primes == exceptional_primes_cyclotomic(D, R, lo, hi);
  out.shape = D * D * R * std::log(R) * std::log(R) / std::log(D);
  return out;
}

}  // namespace lmom
