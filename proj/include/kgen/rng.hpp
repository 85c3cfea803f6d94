#pragma once

#include <cstdint>
#include <random>

namespace kgen {

/// Seedable 64-bit Mersenne Twister with deterministic stream splitting.
///
/// Rng(seed, stream) seeds std::mt19937_64 through std::seed_seq from the
/// (seed, stream) pair, so distinct streams of one seed are independent
/// sequences. Parallel work takes one stream per task and reproduces the
/// sequential result exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_open_closed() { return 1.0 - uniform(); }

 private:
  std::mt19937_64 engine_;
};

/// Stream ids reserved by library samplers.
namespace streams {
inline constexpr std::uint64_t kPrimary = 0;
inline constexpr std::uint64_t kMixtureComponent = 1;
inline constexpr std::uint64_t kMixtureNegative = 2;
inline constexpr std::uint64_t kFitJitter = 3;
inline constexpr std::uint64_t kBootstrapBase = 1u << 20;
}  // namespace streams

}  // namespace kgen
