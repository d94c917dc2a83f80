#pragma once

// Dirichlet characters mod p in discrete-log coordinates, |L(1, chi)|^2 for
// odd chi through the sawtooth sum A(chi) = sum_a ((a/p)) chi(a), smoothed
// Dirichlet series, moments over X_{p,m}^-, twisted fourth moments, the
// constants a(k) and c(k1, k2), the smoothed W sums, and the empirical CDF.
//
// chi_j(g^t) = e(jt/(p-1)). The characters trivial on G_m are chi_{d i},
// 0 <= i < m, and chi_{d i}(g^t) = e(it/m), so any sum over X_{p,m} is a
// length-m transform of data folded along t mod m.

#include "lmom/dedekind.hpp"
#include "lmom/errors.hpp"
#include "lmom/fft.hpp"
#include "lmom/ntcore.hpp"
#include "lmom/parallel.hpp"
#include "lmom/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace lmom {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

struct CharacterIndex {
  ContextPtr ctx;
  u64 j = 0;

  u64 n() const { return ctx->group_order(); }
  bool principal() const { return j % n() == 0; }
  bool odd() const { return j % 2 == 1 && n() % 2 == 0; }
  bool trivial_on(const SubgroupSpec& spec) const { return j % spec.d == 0; }

  cplx operator()(u64 a) const {
    if (a % ctx->p() == 0) return 0.0;
    u64 t = ctx->dlog(a);
    u64 e = static_cast<u64>((u128(j % n()) * t) % n());
    return std::polar(1.0, 2 * kPi * static_cast<double>(e) / static_cast<double>(n()));
  }
};

// A(chi) = sum_{a=1}^{p-1} ((a/p)) chi(a), with ((a/p)) = (2a - p)/(2p).
inline cplx character_sum_sawtooth(const CharacterIndex& chi) {
  if (chi.principal()) throw std::domain_error("character_sum_sawtooth: principal character");
  const u64 p = chi.ctx->p();
  const u64 n = chi.n();
  const u64 j = chi.j % n;
  cplx acc = 0.0;
  u64 x = 1;
  for (u64 t = 0; t < n; ++t) {
    u64 e = static_cast<u64>((u128(j) * t) % n);
    acc += static_cast<double>(2 * static_cast<i64>(x) - static_cast<i64>(p)) *
           std::polar(1.0, 2 * kPi * static_cast<double>(e) / static_cast<double>(n));
    x = mulmod(x, chi.ctx->g(), p);
  }
  return acc / (2.0 * static_cast<double>(p));
}

// |L(1, chi)|^2 = (pi^2/p) |A(chi)|^2 for odd chi.
inline double L1_abs2_exact(const CharacterIndex& chi) {
  if (!chi.odd()) throw std::domain_error("L1_abs2_exact: character must be odd");
  return kPi * kPi / static_cast<double>(chi.ctx->p()) * std::norm(character_sum_sawtooth(chi));
}

inline u64 smoothing_cutoff(double Z) { return static_cast<u64>(std::ceil(40.0 * Z)); }

// B[a] = sum_{n = a mod p, n <= 40Z} w(n) e^{-n/Z} / n with w = tau_k.
// Every smoothed character sum is sum_a chi(a) B[a].
inline std::vector<double> smoothed_residue_sums(u64 p, double Z, u64 k = 1) {
  if (!(Z > 0)) throw std::domain_error("smoothed sums: Z must be positive");
  const u64 N = smoothing_cutoff(Z);
  std::vector<long double> acc(p, 0.0L);
  const long double step = std::exp(-1.0L / static_cast<long double>(Z));
  long double decay = 1;
  u64 a = 0;
  auto add = [&](u64 n, u64 w) {
    // refresh the running exponential periodically to bound drift
    if ((n & 1023) == 0) {
      decay = std::exp(-static_cast<long double>(n) / static_cast<long double>(Z));
    } else {
      decay *= step;
    }
    a = a + 1 == p ? 0 : a + 1;
    acc[a] += static_cast<long double>(w) * decay / static_cast<long double>(n);
  };
  if (k == 1) {
    for (u64 n = 1; n <= N; ++n) add(n, 1);
  } else {
    for_each_tau_k(k, N, add);
  }
  return {acc.begin(), acc.end()};
}

// sum_{n <= 40Z} chi(n) n^{-1} e^{-n/Z}.
inline cplx L1_smoothed(const CharacterIndex& chi, double Z, const std::vector<double>* sums = nullptr) {
  const u64 p = chi.ctx->p();
  std::vector<double> local;
  if (!sums) {
    local = smoothed_residue_sums(p, Z);
    sums = &local;
  }
  cplx acc = 0.0;
  for (u64 a = 1; a < p; ++a) acc += chi(a) * (*sums)[a];
  return acc;
}

// Folds data x(g^t), t in [0, p-1), along t mod m and returns
// T[i] = sum_t x(g^t) e(it/m), the sums against chi_{d i}.
inline std::vector<cplx> subgroup_transform(const SubgroupSpec& spec, const std::function<double(u64)>& x) {
  const u64 p = spec.p();
  const u64 m = spec.m;
  std::vector<double> folded(m, 0.0);
  u64 y = 1;
  for (u64 t = 0; t + 1 < p; ++t) {
    folded[t % m] += x(y);
    y = mulmod(y, spec.ctx->g(), p);
  }
  return fft::backward(fft::to_complex(folded));
}

// A(chi_{d i}) for i in [0, m). The folded sums of 2a - p are exact integers
// before the transform.
inline std::vector<cplx> subgroup_sawtooth_sums(const SubgroupSpec& spec) {
  const u64 p = spec.p();
  const u64 m = spec.m;
  std::vector<i64> folded(m, 0);
  u64 y = 1;
  for (u64 t = 0; t + 1 < p; ++t) {
    folded[t % m] += 2 * static_cast<i64>(y) - static_cast<i64>(p);
    y = mulmod(y, spec.ctx->g(), p);
  }
  std::vector<cplx> in(m);
  for (u64 u = 0; u < m; ++u) in[u] = static_cast<double>(folded[u]);
  auto A = fft::backward(in);
  for (auto& z : A) z /= 2.0 * static_cast<double>(p);
  return A;
}

// |L(1, chi)|^2 over X_{p,m}^- (ascending i, chi = chi_{d i}).
inline std::vector<double> odd_abs2_values(const SubgroupSpec& spec) {
  auto A = subgroup_sawtooth_sums(spec);
  std::vector<double> out;
  const double scale = kPi * kPi / static_cast<double>(spec.p());
  for (u64 i = 0; i < spec.m; ++i) {
    if ((spec.d * i) % 2 == 1) out.push_back(scale * std::norm(A[i]));
  }
  return out;
}

enum class MomentMethod { walum_exact, smoothed, dedekind_identity };

inline const char* to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::walum_exact: return "walum-exact";
    case MomentMethod::smoothed: return "smoothed";
    case MomentMethod::dedekind_identity: return "dedekind-identity";
  }
  return "?";
}

struct MomentReport {
  u64 p = 0, m = 0, d = 0;
  double nu = 2;
  MomentMethod method = MomentMethod::walum_exact;
  double value = 0;
  double Z = 0;  // 0 unless smoothed
  double error_budget = 0;
  std::size_t odd_characters = 0;
};

inline double default_cutoff(u64 p) {
  double lp = std::log(static_cast<double>(p));
  return std::max(1e6, static_cast<double>(p) * lp * lp);
}

namespace detail {
inline void require_even_index(const SubgroupSpec& spec, const char* where) {
  if (spec.m % 2 != 0) throw std::domain_error(std::string(where) + ": index m must be even");
}

inline bool is_even_integer(double nu) { return nu == std::floor(nu) && std::fmod(nu, 2.0) == 0; }
}  // namespace detail

// M_nu(p, m) = (2/m) sum_{chi in X_{p,m}^-} |L(1, chi)|^nu. Even integer nu
// uses the exact sawtooth route; other nu use the smoothed series at cutoff
// Z, unless a method is forced.
inline MomentReport moment(const SubgroupSpec& spec, double nu, double Z = 0, std::optional<MomentMethod> force = std::nullopt) {
  detail::require_even_index(spec, "moment");
  if (!(nu > 0)) throw std::domain_error("moment: nu must be positive");
  MomentReport r;
  r.p = spec.p();
  r.m = spec.m;
  r.d = spec.d;
  r.nu = nu;
  r.method = force.value_or(detail::is_even_integer(nu) ? MomentMethod::walum_exact : MomentMethod::smoothed);
  const double scale = 2.0 / static_cast<double>(spec.m);
  if (r.method == MomentMethod::walum_exact) {
    auto values = odd_abs2_values(spec);
    r.odd_characters = values.size();
    double acc = 0;
    for (double v : values) acc += std::pow(v, nu / 2);
    r.value = scale * acc;
    r.error_budget = 1e-12 * std::max(1.0, r.value) * std::sqrt(static_cast<double>(spec.p()));
    return r;
  }
  if (r.method != MomentMethod::smoothed) throw std::invalid_argument("moment: unsupported method");
  r.Z = Z > 0 ? Z : default_cutoff(spec.p());
  if (r.Z < static_cast<double>(spec.p())) throw std::domain_error("moment: Z must be at least p");
  auto B = smoothed_residue_sums(spec.p(), r.Z);
  auto LZ = subgroup_transform(spec, [&](u64 a) { return B[a]; });
  auto A = subgroup_sawtooth_sums(spec);
  double acc = 0, budget = 0;
  for (u64 i = 0; i < spec.m; ++i) {
    if ((spec.d * i) % 2 == 0) continue;
    ++r.odd_characters;
    double L = std::abs(LZ[i]);
    acc += std::pow(L, nu);
    // L_Z - L(1) = -L(0, chi)/Z + O(Z^-3) and |L(0, chi)| = |A(chi)|.
    double dL = 2.0 * std::abs(A[i]) / r.Z;
    budget += std::fabs(std::pow(L + dL, nu) - std::pow(std::max(0.0, L - dL), nu));
  }
  r.value = scale * acc;
  r.error_budget = scale * budget;
  return r;
}

inline MomentReport moment(u64 p, u64 m, double nu) { return moment(subgroup(p, m), nu); }

// (2 pi^{2k} / p^k) sum_{lambda in G_m} K_k(lambda); for k = 1 this is
// (2 pi^2 / p)(s(1,p) + S(p,m)).
inline MomentReport moment_via_dedekind(const SubgroupSpec& spec, int k) {
  detail::require_even_index(spec, "moment_via_dedekind");
  if (k < 1) throw std::domain_error("moment_via_dedekind: k must be positive");
  MomentReport r;
  r.p = spec.p();
  r.m = spec.m;
  r.d = spec.d;
  r.nu = 2.0 * k;
  r.method = MomentMethod::dedekind_identity;
  const double p = static_cast<double>(spec.p());
  Rational total;
  if (k == 1) {
    total = dedekind_fast(1, static_cast<i64>(spec.p())) + subgroup_sum(spec);
  } else {
    total = KfoldCorrelation(spec.ctx, k).subgroup_total(spec);
  }
  r.value = 2.0 * std::pow(kPi * kPi / p, k) * total.to_double();
  r.error_budget = 1e-12 * std::max(1.0, std::fabs(r.value));
  return r;
}

// M_4^-(p; k1, k2) = (2/(p-1)) sum_{chi odd} chi(k1) conj(chi(k2)) |L(1, chi)|^4,
// from one full-length transform.
struct TwistedFourth {
  double value = 0;     // character side (real part; the imaginary part is rounding)
  double imag = 0;
  double identity = 0;  // (2 pi^4 / p^2) S_{k1,k2}(p)
  Rational correlation;
};

inline TwistedFourth twisted_fourth(const PrimeContext& ctx, const DedekindTable& table, i64 k1, i64 k2) {
  const u64 p = ctx.p();
  const u64 a = mod(k1, p), b = mod(k2, p);
  if (a == 0 || b == 0) throw std::domain_error("twisted_fourth: p divides k1*k2");
  const u64 n = p - 1;
  std::vector<cplx> x(n);
  for (u64 t = 0; t < n; ++t) x[t] = static_cast<double>(2 * static_cast<i64>(ctx.power(t)) - static_cast<i64>(p)) / (2.0 * p);
  auto A = fft::backward(x);
  const u64 shift = (ctx.dlog(a) + n - ctx.dlog(b)) % n;
  cplx acc = 0.0;
  const double pp = static_cast<double>(p);
  for (u64 j = 1; j < n; j += 2) {
    double L2 = kPi * kPi / pp * std::norm(A[j]);
    u64 e = static_cast<u64>((u128(j) * shift) % n);
    acc += std::polar(1.0, 2 * kPi * static_cast<double>(e) / static_cast<double>(n)) * (L2 * L2);
  }
  TwistedFourth out;
  out.value = 2.0 / static_cast<double>(n) * acc.real();
  out.imag = 2.0 / static_cast<double>(n) * acc.imag();
  out.correlation = correlation(table, k1, k2).value;
  out.identity = 2 * std::pow(kPi, 4) / (pp * pp) * out.correlation.to_double();
  return out;
}

inline TwistedFourth twisted_fourth(u64 p, i64 k1, i64 k2) {
  PrimeContext ctx(p);
  return twisted_fourth(ctx, DedekindTable(p), k1, k2);
}

// a(k) = sum_{n >= 1} tau_k(n)^2 / n^2, two ways.
//  Euler: zeta(2)^{k^2} prod_p E_p(p^-2) (1 - p^-2)^{k^2}, E_p(x) = sum_j tau_k(p^j)^2 x^j;
//    each factor is 1 + O(p^-4).
//  Direct: with h the Dirichlet convolution of tau_k^2 and the inverse of
//    zeta^{k^2}, h(p) = 0 and h(p^e) = 0 for e >= k^2, so
//    a(k) = zeta(2)^{k^2} sum_{n squarefull} h(n)/n^2. The part of n built
//    from primes below kSmoothPrimes is a finite sum and is taken in full;
//    the rest runs over squarefull n <= N.
struct AConstant {
  u64 k = 1;
  double euler = 0;
  double direct = 0;
  double tail_majorant = 0;  // bound on the omitted part of the direct sum
  double tol = 0;
  bool agree = false;
  double value() const { return euler; }
};

namespace detail {
inline double zeta2() { return kPi * kPi / 6; }

// h(q^e) for e = 0..k^2 (independent of the prime q), exactly.
inline std::vector<double> h_local(u64 k) {
  const u64 K = k * k;
  std::vector<double> out(K + 1, 0.0);
  for (u64 j = 0; j <= K; ++j) {
    i128 acc = 0;
    for (u64 i = 0; i <= j; ++i) {
      i128 t = binomial(j - i + k - 1, k - 1);
      i128 c = binomial(K, i);
      acc += (i % 2 == 0 ? 1 : -1) * t * t * c;
    }
    out[j] = static_cast<double>(acc);
  }
  return out;
}

inline constexpr u64 kSmoothPrimes = 100;
}  // namespace detail

inline AConstant a_constant(u64 k, double tol = 1e-10, double euler_limit = 2e5, double direct_limit = 1e12) {
  if (k == 0) throw std::domain_error("a_constant: k must be positive");
  if (k > 8) throw feasibility_error("a_constant: k above 8");
  if (!(tol > 0)) throw std::domain_error("a_constant: tol must be positive");
  AConstant out;
  out.k = k;
  out.tol = tol;
  const double K = static_cast<double>(k * k);
  const long double lead = static_cast<long double>(K) * std::log(static_cast<long double>(detail::zeta2()));
  // Euler route: sum of log factors in ascending p.
  {
    long double logsum = 0;
    for (u64 q : primes_up_to(static_cast<u64>(euler_limit))) {
      long double x = 1.0L / (static_cast<long double>(q) * q);
      long double series = 0, xj = x;
      for (u64 j = 1; j < 200; ++j) {
        long double t = static_cast<long double>(binomial(j + k - 1, k - 1));
        long double term = t * t * xj;
        series += term;
        if (term < 1e-30L * series) break;
        xj *= x;
      }
      logsum += std::log1p(series) + static_cast<long double>(K) * std::log1p(-x);
    }
    out.euler = static_cast<double>(std::exp(lead + logsum));
  }
  // Direct route.
  {
    const std::vector<double> h = detail::h_local(k);
    const int emax = static_cast<int>(h.size()) - 1;
    const u64 N = static_cast<u64>(direct_limit);
    long double smooth = 1;
    for (u64 q : primes_up_to(detail::kSmoothPrimes - 1)) {
      long double local = 0, w = 1;
      const long double x = 1.0L / (static_cast<long double>(q) * q);
      for (int e = 0; e <= emax; ++e) {
        local += static_cast<long double>(h[e]) * w;
        w *= x;
      }
      smooth *= local;
    }
    std::vector<u64> ps;
    for (u64 q : primes_up_to(static_cast<u64>(std::sqrt(direct_limit)) + 1)) {
      if (q >= detail::kSmoothPrimes) ps.push_back(q);
    }
    long double rough = 0;
    auto dfs = [&](auto&& self, std::size_t start, u64 n, long double weight) -> void {
      rough += weight / (static_cast<long double>(n) * n);
      for (std::size_t i = start; i < ps.size(); ++i) {
        const u64 q = ps[i];
        if (u128(n) * q * q > N) break;
        u64 qe = q * q;
        for (int e = 2; e <= emax && u128(n) * qe <= N; ++e) {
          if (h[e] != 0) self(self, i + 1, n * qe, weight * h[e]);
          if (u128(qe) * q > N) break;
          qe *= q;
        }
      }
    };
    dfs(dfs, 0, 1, 1.0L);
    out.direct = static_cast<double>(std::exp(lead) * smooth * rough);
    // Rankin: sum_{n > N, rough} |h(n)|/n^2 <= N^-delta prod_{q >= kSmoothPrimes} (1 + sum_e |h(q^e)| q^{-(2-delta)e}).
    double best = std::numeric_limits<double>::infinity();
    const std::vector<u64> all = primes_up_to(1000000);
    for (double delta : {0.5, 0.8, 1.0, 1.2, 1.4}) {
      long double logprod = 0;
      for (u64 q : all) {
        if (q < detail::kSmoothPrimes) continue;
        long double s = 0;
        const long double qe = std::pow(static_cast<long double>(q), -(2.0L - delta));
        long double pw = qe * qe;
        for (int e = 2; e <= emax; ++e) {
          s += std::fabs(static_cast<long double>(h[e])) * pw;
          pw *= qe;
        }
        logprod += std::log1p(s);
      }
      // primes above 10^6 contribute at most |h(q^2)| sum_{q > 10^6} q^{-2(2-delta)}
      const long double rest = std::fabs(static_cast<long double>(h[2])) * std::pow(1e6L, -(3.0L - 2 * delta)) / (3.0L - 2 * delta);
      double bound = static_cast<double>(std::exp(lead) * std::fabs(smooth) * std::exp(logprod + rest) * std::pow(static_cast<long double>(N), -delta));
      best = std::min(best, bound);
    }
    out.tail_majorant = best;
  }
  out.agree = std::fabs(out.euler - out.direct) <= tol * std::max(1.0, std::fabs(out.euler));
  return out;
}

// c(k1, k2) = sum_{n >= 1} tau(k1 n) tau(k2 n) / (k1 k2 n^2)
//           = a(2)/(k1 k2) prod_{q | k1 k2} L_q(a, b) / L_q(0, 0),
// L_q(a, b) = sum_j (a + j + 1)(b + j + 1) q^{-2j}, a = v_q(k1), b = v_q(k2).
inline double c_constant(u64 k1, u64 k2) {
  if (k1 == 0 || k2 == 0) throw std::domain_error("c_constant: arguments must be positive");
  const double z2 = detail::zeta2();
  const double a2 = std::pow(z2, 4) / (std::pow(kPi, 4) / 90.0);
  auto local = [](int a, int b, double x) {
    long double acc = 0, xj = 1;
    for (int j = 0; j < 200; ++j) {
      long double term = static_cast<long double>(a + j + 1) * (b + j + 1) * xj;
      acc += term;
      if (term < 1e-30L * acc) break;
      xj *= x;
    }
    return static_cast<double>(acc);
  };
  double ratio = 1;
  for (auto [q, e] : factorize(k1 * k2)) {
    int a = 0, b = 0;
    for (u64 t = k1; t % q == 0; t /= q) ++a;
    for (u64 t = k2; t % q == 0; t /= q) ++b;
    double x = 1.0 / (static_cast<double>(q) * q);
    ratio *= local(a, b, x) / local(0, 0, x);
  }
  return a2 / static_cast<double>(k1 * k2) * ratio;
}

// W^{+/-}_lambda = sum_{r, s >= 1, r = +/- lambda s mod p} tau_k(r) tau_k(s) (rs)^-1 e^{-(r+s)/Z},
// truncated at r, s <= 40Z. With B the tau_k-weighted residue sums this is
// sum_a B(+/- lambda a) B(a).
inline double w_sum(const std::vector<double>& B, u64 p, u64 lambda, int sign) {
  long double acc = 0;
  const u64 l = sign > 0 ? lambda % p : mod(-static_cast<i64>(lambda % p), p);
  for (u64 a = 0; a < p; ++a) acc += static_cast<long double>(B[mulmod(l, a, p)]) * B[a];
  return static_cast<double>(acc);
}

inline double w_sums(const SubgroupSpec& spec, u64 lambda, u64 k, double Z, int sign) {
  if (Z < static_cast<double>(spec.p())) throw std::domain_error("w_sums: Z must be at least p");
  return w_sum(smoothed_residue_sums(spec.p(), Z, k), spec.p(), lambda, sign);
}

struct WReconstruction {
  double w_total = 0;          // sum_{lambda in G_m} (W^+ - W^-)
  double character_side = 0;   // (2/m) sum_{X^-} |L_Z^{(k)}|^2
  double moment = 0;           // M_{2k}(p, m), exact route
  double Z = 0;
  u64 k = 1;
};

// The W sums reassemble the smoothed 2k-th moment:
//   sum_{lambda in G_m} (W^+_lambda - W^-_lambda) = (2/m) sum_{X^-} |L_Z^{(k)}(chi)|^2,
// where L_Z^{(k)}(chi) = sum tau_k(n) chi(n) n^-1 e^{-n/Z} approximates L(1,chi)^k.
inline WReconstruction w_reconstruction(const SubgroupSpec& spec, u64 k, double Z) {
  detail::require_even_index(spec, "w_reconstruction");
  if (Z < static_cast<double>(spec.p())) throw std::domain_error("w_reconstruction: Z must be at least p");
  WReconstruction out;
  out.Z = Z;
  out.k = k;
  const u64 p = spec.p();
  auto B = smoothed_residue_sums(p, Z, k);
  std::vector<double> terms = par::map<double>(spec.elements.size(), [&](std::size_t i) {
    return w_sum(B, p, spec.elements[i], +1) - w_sum(B, p, spec.elements[i], -1);
  });
  for (double t : terms) out.w_total += t;
  auto LZ = subgroup_transform(spec, [&](u64 a) { return B[a]; });
  double acc = 0;
  for (u64 i = 0; i < spec.m; ++i) {
    if ((spec.d * i) % 2 == 1) acc += std::norm(LZ[i]);
  }
  out.character_side = 2.0 / static_cast<double>(spec.m) * acc;
  out.moment = moment(spec, 2.0 * static_cast<double>(k)).value;
  return out;
}

// Phi_{p,m}(x) = (2/m) #{chi in X_{p,m}^- : |L(1, chi)| <= x} on a sorted grid.
inline std::vector<double> empirical_cdf(const SubgroupSpec& spec, const std::vector<double>& grid) {
  detail::require_even_index(spec, "empirical_cdf");
  if (!std::is_sorted(grid.begin(), grid.end())) throw std::domain_error("empirical_cdf: grid must be sorted");
  auto values = odd_abs2_values(spec);
  for (double& v : values) v = std::sqrt(v);
  std::sort(values.begin(), values.end());
  std::vector<double> out;
  out.reserve(grid.size());
  const double scale = 2.0 / static_cast<double>(spec.m);
  for (double x : grid) {
    auto cnt = std::upper_bound(values.begin(), values.end(), x) - values.begin();
    out.push_back(scale * static_cast<double>(cnt));
  }
  return out;
}

}  // namespace lmom
