#pragma once

#include <cstdint>
#include <random>

namespace enantiosim {

/// Mixes a master seed with stream identifiers (grid index, field role, ...)
/// into an independent 64-bit seed. SplitMix64 finalizer.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream, std::uint64_t substream = 0);

/// Seeded generator whose variates are bit-identical across standard library
/// implementations. std::mt19937_64 output is fixed by the standard; the
/// distribution objects are not, so the transforms live here.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  /// Uniform on [lo, hi].
  double uniform(double lo, double hi);
  /// Standard normal (Box-Muller, one variate per call, cached pair).
  double normal();

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace enantiosim
