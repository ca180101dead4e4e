// Deterministic random numbers (SplitMix64).  The generator and every
// helper below use only integer arithmetic plus IEEE double scaling, so
// a given seed yields the same stream on every platform and build.
#pragma once

#include <hylab/scalar.hpp>

#include <cstdint>

namespace hylab {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n).  The modulo bias is irrelevant for test data.
  std::uint64_t below(std::uint64_t n) { return u64() % n; }

  int int_in(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  double unit() {  // [0, 1)
    return static_cast<double>(u64() >> 11) * 0x1.0p-53;
  }

  double double_in(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Random rational with |numerator| <= max_num and 1 <= denominator <= max_den.
  Rat rat(int max_num, int max_den) {
    int num = int_in(-max_num, max_num);
    int den = int_in(1, max_den);
    return Rat(num, den);
  }

  // Random nonzero rational.
  Rat rat_nonzero(int max_num, int max_den) {
    for (;;) {
      Rat r = rat(max_num, max_den);
      if (r != 0) return r;
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace hylab
