#ifndef DEGEN_RNG_HPP
#define DEGEN_RNG_HPP

#include <cstdint>
#include <vector>

namespace degen {

/// Counter-based generator: draw k is a pure mix of (seed, k), so streams
/// are reproducible across platforms and independent of call history.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  /// Uniform integer in [lo, hi] inclusive.
  long next_long(long lo, long hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<long>(next_u64() % span);
  }

  /// Low-discrepancy-ish point in the ball of the given radius (rejection
  /// from the cube).
  std::vector<double> point_in_ball(int dim, double radius) {
    for (;;) {
      std::vector<double> x(dim);
      double norm2 = 0.0;
      for (int i = 0; i < dim; ++i) {
        x[i] = uniform(-1.0, 1.0);
        norm2 += x[i] * x[i];
      }
      if (norm2 <= 1.0 && norm2 > 1e-8) {
        for (auto& v : x) v *= radius;
        return x;
      }
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace degen

#endif
