#pragma once

// Index-parallel helpers. Work is handed out in chunks from a shared
// counter; every result lands in its own slot, so callers reduce in index
// order and the output does not depend on the thread count.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace lmom::par {

inline constexpr const char* kThreadEnv = "LMOM_THREADS";

namespace detail {
inline std::atomic<std::size_t>& configured() {
  static std::atomic<std::size_t> n{0};
  return n;
}
}  // namespace detail

inline std::size_t default_thread_count() {
  if (const char* env = std::getenv(kThreadEnv)) {
    try {
      long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

inline std::size_t thread_count() {
  std::size_t n = detail::configured().load();
  return n == 0 ? default_thread_count() : n;
}

inline void set_thread_count(std::size_t n) { detail::configured().store(n); }

// Calls f(i) for every i in [0, n).
template <class F>
void for_each_index(std::size_t n, F&& f, std::size_t chunk = 0) {
  const std::size_t workers = std::min(thread_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  if (chunk == 0) chunk = std::max<std::size_t>(1, n / (workers * 16));
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto body = [&] {
    try {
      for (;;) {
        std::size_t begin = next.fetch_add(chunk);
        if (begin >= n) return;
        std::size_t end = std::min(n, begin + chunk);
        for (std::size_t i = begin; i < end; ++i) f(i);
      }
    } catch (...) {
      std::lock_guard lock(error_mutex);
      if (!error) error = std::current_exception();
      next.store(n);
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(body);
    body();
  }
  if (error) std::rethrow_exception(error);
}

template <class T, class F>
std::vector<T> map(std::size_t n, F&& f, std::size_t chunk = 0) {
  std::vector<T> out(n);
  for_each_index(n, [&](std::size_t i) { out[i] = f(i); }, chunk);
  return out;
}

}  // namespace lmom::par
