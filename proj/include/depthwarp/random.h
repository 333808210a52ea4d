#pragma once

#include <cstdint>
#include <random>

namespace depthwarp {

// Uniform doubles on top of std::mt19937_64. std::uniform_real_distribution
// output is implementation-defined, so the mapping to [0, 1) is done by hand
// to keep seeded runs reproducible everywhere.
class DeterministicRng {
 public:
  explicit DeterministicRng(uint64_t seed) : engine_(seed) {}

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace depthwarp
