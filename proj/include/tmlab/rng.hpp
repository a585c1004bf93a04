#pragma once

#include <cstdint>
#include <random>

namespace tmlab {

// mt19937_64 with the floating point conversion spelled out, so streams are
// identical across standard libraries
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }  // [0, 1)
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  int integer(int lo, int hi) {  // inclusive
    return lo + int(uniform() * double(hi - lo + 1));
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace tmlab
