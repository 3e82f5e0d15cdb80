#pragma once

// Deterministic hashing and random streams. Every randomized step in the
// testbed draws from a stream derived from (root seed, stable tag), so
// regenerating any artifact with the same seed is bit-identical and adding
// documents or experiments does not perturb unrelated draws.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "pivotbench/core.hpp"

namespace pivotbench {

inline constexpr std::uint64_t kFnvOffset = 1469598103934665603ULL;
inline constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

inline std::uint64_t fnv1a64(std::string_view data,
                             std::uint64_t seed = kFnvOffset) {
  std::uint64_t h = seed;
  for (unsigned char c : data) {
    h ^= c;
    h *= kFnvPrime;
  }
  return h;
}

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Stream seed for a named sub-generator of a root seed.
inline std::uint64_t derive_stream(std::uint64_t root, std::string_view tag) {
  std::uint64_t h = kFnvOffset;
  for (int i = 0; i < 8; ++i) {
    h ^= static_cast<unsigned char>(root >> (8 * i));
    h *= kFnvPrime;
  }
  return fnv1a64(tag, h);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // Uniform in [0, n). Modulo bias is negligible for the small ranges used.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) throw ConfigError("Rng::below requires n > 0");
    return next_u64() % n;
  }

  // Uniform integer in [lo, hi] inclusive.
  long long uniform_int(long long lo, long long hi) {
    if (hi < lo) throw ConfigError("Rng::uniform_int requires lo <= hi");
    return lo + static_cast<long long>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // Uniform double in [0, 1).
  double unit() {
    return static_cast<double>(next_u64() >> 11) * (1.0 / 9007199254740992.0);
  }

  // Uniform double in [lo, hi].
  double uniform_real(double lo, double hi) { return lo + unit() * (hi - lo); }

  bool bernoulli(double p) { return unit() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    if (v.empty()) throw ConfigError("Rng::pick on empty vector");
    return v[below(v.size())];
  }

  // Sample k distinct indices from [0, n) in ascending order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
    if (k > n) throw ConfigError("Rng::sample_indices requires k <= n");
    // Floyd's algorithm; result sorted for deterministic downstream use.
    std::vector<std::size_t> out;
    std::vector<bool> taken(n, false);
    for (std::size_t j = n - k; j < n; ++j) {
      std::size_t t = static_cast<std::size_t>(below(j + 1));
      if (taken[t]) t = j;
      taken[t] = true;
      out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  std::uint64_t state_;
};

}  // namespace pivotbench
