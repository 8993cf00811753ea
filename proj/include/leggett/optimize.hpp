#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "leggett/certify.hpp"
#include "leggett/rng.hpp"

namespace leggett {

/// Maps a real parameter vector to a list of settings pairs.
struct SettingsFamily {
  std::string name;
  std::size_t dimension = 0;
  std::function<std::vector<SettingsPair>(std::span<const double>)> map;
};

/// One pair; parameters are the spherical angles (θ_a, φ_a, θ_b, φ_b).
SettingsFamily single_pair_family();

/// Four vectors a, a', b, b' (two spherical angles each) combined into the
/// pairs (a,b), (a,b'), (a',b), (a',b').
SettingsFamily chsh_family();

/// `count` unrelated pairs, four spherical angles per pair.
SettingsFamily independent_pairs_family(std::size_t count);

/// Resolves "single", "chsh" or "pairs:<count>". Throws std::invalid_argument.
SettingsFamily family_by_name(const std::string& name);

/// Signed worst-case violation for singlet targets on `grid` (the
/// certificate's `value`); positive means certified infeasible.
double singlet_violation(std::span<const SettingsPair> settings, const CandidateGrid& grid,
                         bool include_marginals);

struct OptimizerOptions {
  /// Maximum number of objective evaluations; must be positive.
  std::size_t budget = 10000;
  double initial_step = 0.5;
  double min_step = 1e-3;
  bool include_marginals = false;
  /// The best settings are re-solved on a grid this many times larger; a
  /// margin counts only if both resolutions agree within `stability_tolerance`.
  /// 0 skips the check and accepts the search-grid margin as is.
  std::size_t stability_factor = 4;
  double stability_tolerance = 0.2;
  /// Maximize the smaller of the search-grid and refined-grid values, so the
  /// search cannot profit from gaps in a single grid. Costs one extra solve
  /// per evaluation.
  bool robust = false;
  /// 0 picks the hardware concurrency. The result does not depend on it.
  unsigned threads = 0;
};

struct OptimizationResult {
  std::vector<double> parameters;
  std::vector<SettingsPair> settings;
  /// Signed objective at the best parameters on the search grid.
  double value = 0.0;
  /// max(value, 0) on the search grid.
  double grid_margin = 0.0;
  /// Signed objective re-evaluated on the refined grid (equals `value` when
  /// the stability check is disabled).
  double refined_value = 0.0;
  std::size_t refined_grid_atoms = 0;
  bool stable = false;
  /// The grid margin when it is positive and stable under refinement, else 0.
  double margin = 0.0;
  std::size_t evaluations = 0;
  std::size_t restarts = 0;
};

/// Random-restart pattern search maximizing singlet_violation. Each restart
/// draws uniform angles, then repeatedly tries ±step along every coordinate,
/// moves to the best improving candidate (lowest index on ties) and halves the
/// step when none improves. The search grid is expected to come from
/// certification_grid(total); refinement uses certification_grid(total *
/// stability_factor). Deterministic given `seed`. Throws
/// std::invalid_argument for a zero budget.
OptimizationResult optimize_settings(const SettingsFamily& family, const CandidateGrid& grid,
                                     const OptimizerOptions& options, RngSeed seed);

}  // namespace leggett
