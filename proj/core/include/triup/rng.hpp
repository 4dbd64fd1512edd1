#pragma once

#include <cstdint>
#include <random>

namespace triup {

/// splitmix64 step; used to derive independent sub-seeds.
inline std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Deterministic per-index sub-seed. Restart r of a seeded run uses
/// derive_seed(seed, r), so results do not depend on how many restarts
/// run or in which order.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base + 0x9E3779B97F4A7C15ULL * (index + 1));
}

/// Seeded uniform sampler. The double mapping is done by hand from the
/// mt19937_64 stream so sequences are identical across standard
/// libraries, which the byte-identical report contract relies on.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Uniform in [-1, 1).
  double signed_unit() { return uniform(-1.0, 1.0); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace triup
