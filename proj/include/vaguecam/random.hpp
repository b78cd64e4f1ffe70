#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace vaguecam {

// Seeded generator with fully specified derived draws, so results do not
// depend on the standard library's distribution implementations.
//
//   uniform_index(n): draw x = next() until x < floor(2^64 / n) * n, return x % n
//   uniform_unit():   (next() >> 11) * 2^-53, in [0, 1)
//   shuffle(v):       Fisher-Yates, for i = n-1 down to 1: swap(v[i], v[uniform_index(i+1)])
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t uniform_index(std::uint64_t n) {
    const std::uint64_t limit = n == 0 ? 0 : (UINT64_MAX / n) * n;
    while (true) {
      const std::uint64_t x = engine_();
      if (x < limit) return x % n;
    }
  }

  double uniform_unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform_unit(); }

  bool bernoulli(double p) { return uniform_unit() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(uniform_index(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace vaguecam
