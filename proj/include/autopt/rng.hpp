#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace autopt {

// 64-bit FNV-1a, used to key substreams by label.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Seeded RNG with reproducible mappings. std::mt19937_64 output is pinned by
// the standard; the helpers below replace std::*_distribution, whose results
// differ between standard libraries and would break byte-stable generation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1), 53-bit resolution.
  static double unit_from_bits(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
  }
  double next_unit() { return unit_from_bits(next_u64()); }

  // Uniform integer in [lo, hi], inclusive. Rejection-debiased.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto range = static_cast<std::uint64_t>(hi - lo) + 1ull;
    if (range == 0) return static_cast<std::int64_t>(next_u64());
    const std::uint64_t threshold = (0ull - range) % range;
    std::uint64_t x = next_u64();
    while (x < threshold) x = next_u64();
    return lo + static_cast<std::int64_t>(x % range);
  }

  // Uniform index in [0, n); n must be positive.
  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform_int(0, static_cast<std::int64_t>(n) - 1));
  }

  bool chance(double p) { return next_unit() < p; }
  double uniform_real(double lo, double hi) { return lo + (hi - lo) * next_unit(); }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

  // Draws k distinct indices from [0, n) in selection order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    if (k > n) k = n;
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + index(n - i);
      std::swap(all[i], all[j]);
    }
    all.resize(k);
    return all;
  }

  // Independent substream derived from the original seed only, so adding a
  // consumer does not shift draws seen by the others.
  Rng fork(std::string_view label) const { return Rng(splitmix64(seed_ ^ fnv1a64(label))); }
  Rng fork(std::uint64_t n) const { return Rng(splitmix64(seed_ ^ splitmix64(n))); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace autopt
