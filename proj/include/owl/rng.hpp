#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace owl {

// splitmix64 step; used to derive independent streams from a base seed.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream-splitting rule used by the timing grid: every (n, density, run)
// cell draws from its own generator seeded by chaining the cell coordinates
// through splitmix64, so cells are reproducible independently of execution
// order. Densities are keyed in permille to stay integral.
inline std::uint64_t derive_stream(std::uint64_t base, std::uint64_t a, std::uint64_t b,
                                   std::uint64_t c) {
  std::uint64_t s = splitmix64(base ^ 0x8f1bbcdcbfa53e0bULL);
  s = splitmix64(s ^ a);
  s = splitmix64(s ^ b);
  s = splitmix64(s ^ c);
  return s;
}

// mt19937_64 with explicit draw helpers. The uniform and normal mappings are
// written out (rather than taken from <random> distributions) so that a
// fixed seed yields the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; the pair's second value is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Uniform integer in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - ~std::uint64_t{0} % bound;
    std::uint64_t draw;
    do {
      draw = eng_();
    } while (draw >= limit);
    return draw % bound;
  }

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace owl
