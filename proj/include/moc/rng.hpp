#pragma once

#include <cstdint>
#include <random>

namespace moc {

/// Seeded random source with platform-independent draws. The standard
/// distributions are implementation-defined, so uniforms are derived
/// directly from the mt19937_64 bit stream to keep runs reproducible
/// across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform double in [0, 1) with 53 bits of resolution.
  double uniform01() { return (gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be positive.
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  /// Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(uniform_index(static_cast<std::size_t>(hi - lo + 1)));
  }

  /// Derives an independent child stream; used to decouple env, init and
  /// sampling randomness so config tweaks do not shift unrelated draws.
  Rng split() { return Rng(gen_()); }

  std::uint64_t raw() { return gen_(); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace moc
