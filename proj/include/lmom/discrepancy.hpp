#pragma once

// Star discrepancy of planar point sets, in particular
// S_{lambda,p} = {(i/p, {lambda i/p}) : i = 1..p}, and the computable bounds
// linking it to Dedekind sums.

#include "lmom/dedekind.hpp"
#include "lmom/errors.hpp"
#include "lmom/lattice.hpp"
#include "lmom/ntcore.hpp"
#include "lmom/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace lmom {

struct PointSet2 {
  std::vector<std::pair<double, double>> points;
  u64 lambda = 0;  // 0 for sets not of the form S_{lambda,p}
  u64 p = 0;
};

inline PointSet2 lattice_points(u64 lambda, u64 p) {
  if (lambda % p == 0) throw std::domain_error("lattice_points: lambda divisible by p");
  PointSet2 ps;
  ps.lambda = lambda % p;
  ps.p = p;
  ps.points.reserve(p);
  const double pp = static_cast<double>(p);
  for (u64 i = 1; i <= p; ++i) ps.points.emplace_back(static_cast<double>(i) / pp, static_cast<double>(mulmod(lambda % p, i, p)) / pp);
  return ps;
}

inline constexpr std::size_t kStarDiscrepancyCap = 5000;

// D* = sup over anchored boxes of |#(points in box)/N - area|, attained on the
// grid of point coordinates (plus 1) with the box closed or open:
//   max over grid (X, Y) of max(C[0,X]x[0,Y]/N - XY, XY - C[0,X)x[0,Y)/N).
inline double star_discrepancy(const PointSet2& ps) {
  const std::size_t N = ps.points.size();
  if (N == 0) throw std::domain_error("star_discrepancy: empty point set");
  if (N > kStarDiscrepancyCap) throw feasibility_error("star_discrepancy: more than 5000 points");
  std::vector<double> xs, ys;
  for (auto [x, y] : ps.points) {
    xs.push_back(x);
    ys.push_back(y);
  }
  xs.push_back(1.0);
  ys.push_back(1.0);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  auto yrank = [&](double y) { return static_cast<std::size_t>(std::lower_bound(ys.begin(), ys.end(), y) - ys.begin()); };
  std::vector<std::pair<double, std::size_t>> pts;
  for (auto [x, y] : ps.points) pts.emplace_back(x, yrank(y));
  std::sort(pts.begin(), pts.end());
  const double n = static_cast<double>(N);
  std::vector<u64> below(ys.size(), 0);  // points with x < X, by y rank
  std::vector<u64> upto(ys.size(), 0);   // points with x <= X, by y rank
  std::size_t next = 0;
  double best = 0;
  for (double X : xs) {
    below = upto;
    while (next < pts.size() && pts[next].first <= X) ++upto[pts[next++].second];
    u64 closed = 0, open = 0;
    for (std::size_t r = 0; r < ys.size(); ++r) {
      // open box: y < ys[r]; closed box: y <= ys[r]
      closed += upto[r];
      const double area = X * ys[r];
      best = std::max(best, static_cast<double>(closed) / n - area);
      best = std::max(best, area - static_cast<double>(open) / n);
      open += below[r];
    }
  }
  return best;
}

// Reference: every grid box counted from scratch, O(N^3).
inline double star_discrepancy_bruteforce(const PointSet2& ps) {
  const std::size_t N = ps.points.size();
  std::vector<double> xs{1.0}, ys{1.0};
  for (auto [x, y] : ps.points) {
    xs.push_back(x);
    ys.push_back(y);
  }
  const double n = static_cast<double>(N);
  double best = 0;
  for (double X : xs) {
    for (double Y : ys) {
      u64 closed = 0, open = 0;
      for (auto [x, y] : ps.points) {
        if (x <= X && y <= Y) ++closed;
        if (x < X && y < Y) ++open;
      }
      best = std::max({best, static_cast<double>(closed) / n - X * Y, X * Y - static_cast<double>(open) / n});
    }
  }
  return best;
}

// Integer reference for S_{lambda,p}: every grid box (a/p, b/p) counted from scratch.
inline Rational star_discrepancy_bruteforce(u64 lambda, u64 p) {
  const i64 P = static_cast<i64>(p);
  i64 best = 0;
  for (i64 a = 0; a <= P; ++a) {
    for (i64 b = 0; b <= P; ++b) {
      i64 closed = 0, open = 0;
      for (i64 i = 1; i <= P; ++i) {
        i64 y = static_cast<i64>(mulmod(lambda % p, static_cast<u64>(i), p));
        if (i <= a && y <= b) ++closed;
        if (i < a && y < b) ++open;
      }
      best = std::max({best, P * closed - a * b, a * b - P * open});
    }
  }
  return make_rational(best, P * P);
}

// Exact D*(S_{lambda,p}) as a rational with denominator p^2: coordinates are
// a/p, so p^2 D* = max over 0 <= a, b <= p of max(p C_closed - ab, ab - p C_open).
inline Rational star_discrepancy_exact(u64 lambda, u64 p) {
  if (lambda % p == 0) throw std::domain_error("star_discrepancy: lambda divisible by p");
  if (p > kStarDiscrepancyCap) throw feasibility_error("star_discrepancy: more than 5000 points");
  // point i has x = i, y = lambda i mod p; i = p sits at (p, 0).
  // pref[b] = #{points with x <= a, y <= b}, advanced one column at a time;
  // the open count at (a, b) is the previous column's pref[b - 1].
  std::vector<i64> pref(p + 1, 0);
  const i64 P = static_cast<i64>(p);
  i64 best = 0;
  for (u64 a = 0; a <= p; ++a) {
    const u64 ya = a >= 1 ? mulmod(lambda % p, a, p) : p + 1;
    i64 open = 0;
    for (u64 b = 0; b <= p; ++b) {
      const i64 old = pref[b];
      if (ya <= b) ++pref[b];
      const i64 area = static_cast<i64>(a) * static_cast<i64>(b);
      best = std::max(best, std::max(P * pref[b] - area, area - P * open));
      open = old;
    }
  }
  return make_rational(best, P * P);
}

inline constexpr double kKoksmaSzuszConstant = 4.0;

struct KsBound {
  u64 lambda = 0, p = 0;
  i64 H = 0;
  double sigma = 0;
  double bound = 0;
};

// C_KS (1/H + sigma_2(lambda, H)); the exponential sums over S_{lambda,p}
// collapse to p * [h_1 + h_2 lambda = 0 mod p].
inline KsBound ks_bound(u64 lambda, u64 p, i64 H, double c_ks = kKoksmaSzuszConstant) {
  if (H < 2) throw std::domain_error("ks_bound: H must be at least 2");
  KsBound out;
  out.lambda = lambda % p;
  out.p = p;
  out.H = H;
  out.sigma = sigma2_double(lambda, static_cast<double>(H), p);
  out.bound = c_ks * (1.0 / static_cast<double>(H) + out.sigma);
  return out;
}

// Minimum of ks_bound over H = 2, 4, ..., up to the first power of two >= p.
inline KsBound ks_envelope(u64 lambda, u64 p, double c_ks = kKoksmaSzuszConstant) {
  KsBound best;
  best.bound = std::numeric_limits<double>::infinity();
  for (i64 H = 2;; H *= 2) {
    KsBound b = ks_bound(lambda, p, H, c_ks);
    if (b.bound < best.bound) best = b;
    if (static_cast<u64>(H) >= p) break;
  }
  return best;
}

inline constexpr double kHardyKrauseConstant = 1.0;

struct DedekindDiscrepancy {
  u64 lambda = 0, p = 0;
  double s_abs = 0;
  Rational d_star;
  double p_d_star = 0;
  double ratio = 0;  // |s(lambda,p)| / (p D*)
  bool within = true;
};

inline DedekindDiscrepancy dedekind_vs_discrepancy(u64 lambda, u64 p, const Rational& d_star, double c_hk = kHardyKrauseConstant) {
  DedekindDiscrepancy out;
  out.lambda = lambda % p;
  out.p = p;
  Rational s = dedekind_fast(static_cast<i64>(lambda % p), static_cast<i64>(p));
  out.s_abs = std::fabs(s.to_double());
  out.d_star = d_star;
  out.p_d_star = static_cast<double>(p) * out.d_star.to_double();
  out.ratio = out.s_abs / out.p_d_star;
  out.within = out.ratio <= c_hk;
  return out;
}

inline DedekindDiscrepancy dedekind_vs_discrepancy(u64 lambda, u64 p, double c_hk = kHardyKrauseConstant) {
  require_prime(p, "dedekind_vs_discrepancy");
  return dedekind_vs_discrepancy(lambda, p, star_discrepancy_exact(lambda, p), c_hk);
}

}  // namespace lmom
