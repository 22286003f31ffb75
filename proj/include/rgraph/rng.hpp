#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rgraph/error.hpp"

namespace rgraph {

/// Default seed used everywhere a seed is not supplied explicitly.
inline constexpr std::uint64_t kDefaultSeed = 12345;

/// SplitMix64 finalizer; used to derive independent per-item seeds.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic seed for stream `stream`, item `item` of a run seeded with
/// `seed`. Results do not depend on the order the items are processed in,
/// which keeps parallel replicate loops reproducible.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t item = 0) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ (stream + 0x9E3779B97F4A7C15ull));
  h = mix64(h ^ (item + 0xD1B54A32D192ED03ull));
  return h;
}

/// mt19937_64 engine with hand-rolled distributions. The standard library
/// specifies the engine bit-exactly but not the distributions, so we supply
/// our own to keep outputs identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [lo, hi], inclusive. Rejection sampling, unbiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    require(lo <= hi, ErrorCode::kInvalidArgument, "uniform_int: empty range");
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next_u64());  // full span
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return lo + static_cast<std::int64_t>(x % range);
  }

  /// Standard normal via the Marsaglia polar method.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  /// Gamma(shape, 1) via Marsaglia-Tsang, with the boost for shape < 1.
  double gamma(double shape) {
    require(shape > 0.0, ErrorCode::kInvalidArgument, "gamma: shape must be positive");
    if (shape < 1.0) {
      double u = uniform();
      while (u == 0.0) u = uniform();
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      const double u = uniform();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double chi_square(double nu) { return 2.0 * gamma(0.5 * nu); }

  /// Fisher-Yates shuffle of the first `take` positions (whole vector when
  /// take == size); after the call the first `take` entries are a uniform
  /// sample without replacement.
  template <typename T>
  void partial_shuffle(std::vector<T>& items, std::size_t take) {
    const std::size_t n = items.size();
    if (take > n) take = n;
    for (std::size_t i = 0; i + 1 < n && i < take; ++i) {
      const auto j = static_cast<std::size_t>(
          uniform_int(static_cast<std::int64_t>(i), static_cast<std::int64_t>(n - 1)));
      std::swap(items[i], items[j]);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    partial_shuffle(items, items.size());
  }

  /// Uniform m-subset of {0, ..., n-1}, unsorted.
  std::vector<int> sample_without_replacement(int n, int m) {
    require(0 <= m && m <= n, ErrorCode::kInvalidArgument, "sample: m out of range");
    std::vector<int> idx(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    partial_shuffle(idx, static_cast<std::size_t>(m));
    idx.resize(static_cast<std::size_t>(m));
    return idx;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace rgraph
