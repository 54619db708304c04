// Shared plumbing: deterministic RNG helpers, compensated summation,
// FNV-1a digests, and an order-preserving parallel loop.
#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace disamb {

using PaperId = std::int64_t;

// Deterministic random source. Every derived draw is defined at the bit
// level on top of mt19937_64 so results are identical across platforms
// and standard-library implementations (std::uniform_* distributions are
// not portable).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }

  // Uniform in [0, 1): top 53 bits scaled.
  double u01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
    auto v = static_cast<std::uint64_t>(u01() * static_cast<double>(n));
    return v >= n ? n - 1 : v;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }

  // Exponential with the given mean (inverse CDF).
  double expo(double mean) { return -mean * std::log1p(-u01()); }

  // Standard normal via Box-Muller; uses exactly two u01 draws per call.
  double normal() {
    double u1 = u01();
    double u2 = u01();
    double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(6.283185307179586476925287 * u2);
  }

  // Small-mean Poisson (multiplicative method).
  std::uint32_t poisson(double mean) {
    if (mean < 0) throw std::invalid_argument("Rng::poisson: negative mean");
    double limit = std::exp(-mean);
    std::uint32_t k = 0;
    double p = 1.0;
    do {
      ++k;
      p *= u01();
    } while (p > limit);
    return k - 1;
  }

 private:
  std::mt19937_64 gen_;
};

// Kahan-compensated accumulator; keeps means stable so that reductions do
// not depend on summation order beyond the one we fix.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

inline double kahan_mean(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  KahanSum acc;
  for (double x : xs) acc.add(x);
  return acc.value() / static_cast<double>(xs.size());
}

// FNV-1a, 64-bit.
inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = 0xcbf29ce484222325ull) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

// Runs fn(0..n-1) across a fixed number of worker threads. Work items may
// execute in any order, so callers must write results into per-index slots;
// given that, output is independent of the thread count. threads <= 0 means
// one thread per hardware core.
template <class Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  unsigned t = threads <= 0
                   ? std::max(1u, std::thread::hardware_concurrency())
                   : static_cast<unsigned>(threads);
  if (n < t) t = static_cast<unsigned>(n);
  if (t <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex err_mu;
  auto worker = [&] {
    std::size_t i;
    while (!failed.load(std::memory_order_relaxed) &&
           (i = next.fetch_add(1, std::memory_order_relaxed)) < n) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned k = 0; k < t; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace disamb
