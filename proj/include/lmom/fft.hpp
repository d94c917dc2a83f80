#pragma once

// Thin FFTW wrapper for one-shot complex transforms of arbitrary length.
// Plans are created under a global lock (the FFTW planner is not
// re-entrant); execution on private buffers is thread-safe.

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <vector>

namespace lmom::fft {

using cplx = std::complex<double>;

namespace detail {
inline std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Buffer {
  explicit Buffer(std::size_t n) : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~Buffer() { fftw_free(data); }
  Buffer(const Buffer&) = delete;
  Buffer& operator=(const Buffer&) = delete;
  fftw_complex* data;
};
}  // namespace detail

enum class Direction { forward = FFTW_FORWARD, backward = FFTW_BACKWARD };

// out[k] = sum_j in[j] * exp(sign * 2 pi i j k / n), sign = -1 forward, +1 backward.
// Unnormalized in both directions.
inline std::vector<cplx> transform(std::span<const cplx> in, Direction dir) {
  const std::size_t n = in.size();
  std::vector<cplx> out(n);
  if (n == 0) return out;
  detail::Buffer a(n), b(n);
  fftw_plan plan;
  {
    std::lock_guard lock(detail::planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(n), a.data, b.data, static_cast<int>(dir), FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < n; ++i) {
    a.data[i][0] = in[i].real();
    a.data[i][1] = in[i].imag();
  }
  fftw_execute(plan);
  for (std::size_t i = 0; i < n; ++i) out[i] = {b.data[i][0], b.data[i][1]};
  {
    std::lock_guard lock(detail::planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

inline std::vector<cplx> forward(std::span<const cplx> in) { return transform(in, Direction::forward); }
inline std::vector<cplx> backward(std::span<const cplx> in) { return transform(in, Direction::backward); }

inline std::vector<cplx> to_complex(std::span<const double> x) { return {x.begin(), x.end()}; }

// c[l] = sum_t x[t] * y[(t + l) mod n] for real sequences of equal length.
inline std::vector<double> cyclic_correlation(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (y.size() != n) throw std::invalid_argument("cyclic_correlation: length mismatch");
  auto X = forward(to_complex(x));
  auto Y = forward(to_complex(y));
  for (std::size_t k = 0; k < n; ++k) X[k] = std::conj(X[k]) * Y[k];
  auto c = backward(X);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = c[k].real() / static_cast<double>(n);
  return out;
}

}  // namespace lmom::fft
