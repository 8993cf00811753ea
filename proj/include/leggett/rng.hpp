#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

namespace leggett {

/// Identifies one reproducible random stream. Equal (seed, stream_id) pairs
/// always produce equal sequences.
struct RngSeed {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  /// Child stream for sub-task `index`; children of distinct parents or
  /// distinct indices do not overlap in practice.
  [[nodiscard]] RngSeed derive(std::uint64_t index) const;

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

/// Counter-based generator (Philox4x32-10). The key is the seed, the upper
/// half of the 128-bit counter is the stream id and the lower half counts
/// blocks, so any position in any stream can be computed independently.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(RngSeed seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform01();
  double standard_normal();

  [[nodiscard]] const RngSeed& seed() const { return seed_; }

 private:
  void refill();

  RngSeed seed_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// The raw Philox4x32-10 bijection, exposed for known-answer tests.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key);

/// SplitMix64 finalizer; used to derive stream ids.
std::uint64_t mix64(std::uint64_t x);

}  // namespace leggett
