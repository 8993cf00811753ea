#include "leggett/estimation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace leggett {

namespace {

struct ChunkSums {
  std::int64_t product = 0;
  std::int64_t alice = 0;
  std::int64_t bob = 0;
};

ChunkSums run_chunk(const LeggettModel& m, const SettingsPair& s, std::size_t draws, RngSeed seed) {
  RngStream rng(seed);
  ChunkSums sums;
  for (std::size_t i = 0; i < draws; ++i) {
    const OutcomePair o = sample_outcomes(m, s, rng);
    sums.product += o.alice * o.bob;
    sums.alice += o.alice;
    sums.bob += o.bob;
  }
  return sums;
}

// Integer partial sums make the combination exact, so the fixed chunk layout
// is the only thing the result depends on.
ChunkSums run_all(const LeggettModel& m, const SettingsPair& s, std::size_t n, RngSeed seed,
                  EstimationOptions options) {
  if (n == 0) throw std::invalid_argument("estimation: sample count must be positive");
  const std::size_t chunks = (n + kEstimationChunk - 1) / kEstimationChunk;
  std::vector<ChunkSums> partial(chunks);

  unsigned workers = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, chunks));

  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t c = next++; c < chunks; c = next++) {
      const std::size_t begin = c * kEstimationChunk;
      const std::size_t draws = std::min(kEstimationChunk, n - begin);
      partial[c] = run_chunk(m, s, draws, seed.derive(c));
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  ChunkSums total;
  for (const ChunkSums& p : partial) {
    total.product += p.product;
    total.alice += p.alice;
    total.bob += p.bob;
  }
  return total;
}

}  // namespace

CorrelationEstimate estimate_from_sum(std::int64_t sum, std::size_t n) {
  if (n == 0) throw std::invalid_argument("estimate_from_sum: sample count must be positive");
  const double mean = std::clamp(static_cast<double>(sum) / static_cast<double>(n), -1.0, 1.0);
  const double se = std::abs(mean) == 1.0 ? 0.0 : std::sqrt((1.0 - mean * mean) / static_cast<double>(n));
  return {mean, n, se};
}

CorrelationEstimate estimate_correlation(const LeggettModel& m, const SettingsPair& s, std::size_t n,
                                         RngSeed seed, EstimationOptions options) {
  return estimate_from_sum(run_all(m, s, n, seed, options).product, n);
}

MarginalEstimates estimate_marginals(const LeggettModel& m, const SettingsPair& s, std::size_t n,
                                     RngSeed seed, EstimationOptions options) {
  const ChunkSums sums = run_all(m, s, n, seed, options);
  return {estimate_from_sum(sums.alice, n), estimate_from_sum(sums.bob, n)};
}

}  // namespace leggett
