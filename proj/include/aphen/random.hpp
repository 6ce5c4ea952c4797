#ifndef APHEN_RANDOM_HPP
#define APHEN_RANDOM_HPP

#include <cstdint>
#include <random>

namespace aphen {

/// Seeded 64-bit Mersenne Twister with a portable [0,1) conversion, so
/// factor initializations are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace aphen

#endif  // APHEN_RANDOM_HPP
