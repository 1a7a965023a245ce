#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fcpp {

/// Tags that separate the independent sub-streams of one replicate.
enum class StreamTag : std::uint64_t {
  kMagnitudes = 1,
  kWaitingTimes = 2,
  kEstimation = 3,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for sub-stream (base, index, tag). Depends only on its arguments, so
/// replicates can be generated in any order or in parallel.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index, std::uint64_t tag);

/// A random stream owned by the caller. All samplers take one by reference;
/// callers partition streams across threads.
///
/// Variates are produced from raw 64-bit draws with explicit transforms so
/// results do not depend on the standard library's distribution classes.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  static RandomStream derived(std::uint64_t base, std::uint64_t index, StreamTag tag) {
    return RandomStream(derive_seed(base, index, static_cast<std::uint64_t>(tag)));
  }

  std::uint64_t next() { return engine_(); }

  /// Uniform on the open interval (0, 1).
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  /// Unit-rate exponential.
  double exponential() { return -std::log(uniform()); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fcpp
