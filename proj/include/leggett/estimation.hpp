#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>

#include "leggett/model.hpp"
#include "leggett/rng.hpp"

namespace leggett {

/// Mean of a ±1-valued quantity over n draws, with se = sqrt((1 - mean²)/n).
struct CorrelationEstimate {
  double mean = 0.0;
  std::size_t n = 0;
  double se = 0.0;
};

/// Builds an estimate from the sum of n values in {-1, +1}.
CorrelationEstimate estimate_from_sum(std::int64_t sum, std::size_t n);

struct EstimationOptions {
  /// Worker threads; 0 picks the hardware concurrency. The result does not
  /// depend on this value.
  unsigned threads = 0;
};

/// Draws per chunk. Chunk c always uses stream seed.derive(c), which is what
/// makes results independent of the thread count.
inline constexpr std::size_t kEstimationChunk = 8192;

/// Mean of A·B over n draws of sample_outcomes. Throws std::invalid_argument
/// for n = 0.
CorrelationEstimate estimate_correlation(const LeggettModel& m, const SettingsPair& s, std::size_t n,
                                         RngSeed seed, EstimationOptions options = {});

struct MarginalEstimates {
  CorrelationEstimate a;
  CorrelationEstimate b;
};

/// Means of A and of B over n draws. Throws std::invalid_argument for n = 0.
MarginalEstimates estimate_marginals(const LeggettModel& m, const SettingsPair& s, std::size_t n,
                                     RngSeed seed, EstimationOptions options = {});

}  // namespace leggett
