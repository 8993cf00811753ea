#include "leggett/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <thread>

namespace leggett {

namespace {

UnitVector3 angles_at(std::span<const double> p, std::size_t offset) {
  return UnitVector3::from_spherical(p[offset], p[offset + 1]);
}

constexpr double kFailedEvaluation = -std::numeric_limits<double>::infinity();

// Evaluates every candidate; results are stored by index so the schedule
// never affects the outcome. With a second grid the objective is the smaller
// of the two values.
std::vector<double> evaluate_batch(const SettingsFamily& family, const CandidateGrid& grid,
                                   const CandidateGrid* also, const std::vector<std::vector<double>>& candidates,
                                   bool include_marginals, unsigned threads) {
  std::vector<double> values(candidates.size(), kFailedEvaluation);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < candidates.size(); i = next++) {
      try {
        const auto settings = family.map(candidates[i]);
        double v = singlet_violation(settings, grid, include_marginals);
        if (also != nullptr) v = std::min(v, singlet_violation(settings, *also, include_marginals));
        values[i] = v;
      } catch (const SolverFailure&) {
        values[i] = kFailedEvaluation;
      }
    }
  };
  unsigned workers = threads != 0 ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, candidates.size()));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return values;
}

}  // namespace

SettingsFamily single_pair_family() {
  return {"single", 4, [](std::span<const double> p) {
            return std::vector<SettingsPair>{{angles_at(p, 0), angles_at(p, 2)}};
          }};
}

SettingsFamily chsh_family() {
  return {"chsh", 8, [](std::span<const double> p) {
            const UnitVector3 a = angles_at(p, 0), a2 = angles_at(p, 2);
            const UnitVector3 b = angles_at(p, 4), b2 = angles_at(p, 6);
            return std::vector<SettingsPair>{{a, b}, {a, b2}, {a2, b}, {a2, b2}};
          }};
}

SettingsFamily independent_pairs_family(std::size_t count) {
  if (count == 0) throw std::invalid_argument("independent_pairs_family: count must be positive");
  return {"pairs:" + std::to_string(count), 4 * count, [count](std::span<const double> p) {
            std::vector<SettingsPair> pairs;
            pairs.reserve(count);
            for (std::size_t k = 0; k < count; ++k) {
              pairs.push_back({angles_at(p, 4 * k), angles_at(p, 4 * k + 2)});
            }
            return pairs;
          }};
}

SettingsFamily family_by_name(const std::string& name) {
  if (name == "single") return single_pair_family();
  if (name == "chsh") return chsh_family();
  const std::string prefix = "pairs:";
  if (name.rfind(prefix, 0) == 0) {
    std::size_t used = 0;
    const std::string digits = name.substr(prefix.size());
    unsigned long count = 0;
    try {
      count = std::stoul(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == digits.size() && used > 0 && count > 0 && count <= 64) {
      return independent_pairs_family(count);
    }
  }
  throw std::invalid_argument("unknown settings family: " + name);
}

double singlet_violation(std::span<const SettingsPair> settings, const CandidateGrid& grid,
                         bool include_marginals) {
  const auto problem = build_problem(grid, singlet_targets(settings, include_marginals), include_marginals);
  return solve(problem).value;
}

OptimizationResult optimize_settings(const SettingsFamily& family, const CandidateGrid& grid,
                                     const OptimizerOptions& options, RngSeed seed) {
  if (options.budget == 0) throw std::invalid_argument("optimize_settings: budget must be positive");
  if (family.dimension == 0) throw std::invalid_argument("optimize_settings: empty parameterization");

  if (options.robust && options.stability_factor == 0) {
    throw std::invalid_argument("optimize_settings: robust search needs a stability factor");
  }

  const std::size_t dim = family.dimension;
  OptimizationResult best;
  best.value = kFailedEvaluation;
  std::optional<CandidateGrid> refined;
  if (options.stability_factor != 0) refined = certification_grid(grid.size() * options.stability_factor);
  const CandidateGrid* also = options.robust ? &*refined : nullptr;

  const auto spend = [&](const std::vector<std::vector<double>>& candidates) {
    auto values = evaluate_batch(family, grid, also, candidates, options.include_marginals, options.threads);
    best.evaluations += candidates.size();
    return values;
  };

  while (best.evaluations < options.budget) {
    RngStream rng(seed.derive(best.restarts));
    ++best.restarts;

    std::vector<double> current(dim);
    for (double& x : current) x = 2.0 * std::numbers::pi * rng.uniform01();
    double current_value = spend({current})[0];

    double step = options.initial_step;
    while (step >= options.min_step && best.evaluations < options.budget) {
      const std::size_t room = options.budget - best.evaluations;
      std::vector<std::vector<double>> candidates;
      for (std::size_t k = 0; k < dim && candidates.size() < room; ++k) {
        for (double sign : {1.0, -1.0}) {
          if (candidates.size() == room) break;
          auto trial = current;
          trial[k] += sign * step;
          candidates.push_back(std::move(trial));
        }
      }
      const auto values = spend(candidates);
      std::size_t pick = values.size();
      double pick_value = current_value;
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (values[i] > pick_value + 1e-12) {
          pick = i;
          pick_value = values[i];
        }
      }
      if (pick < values.size()) {
        current = candidates[pick];
        current_value = pick_value;
      } else {
        step *= 0.5;
      }
    }

    if (current_value > best.value) {
      best.value = current_value;
      best.parameters = current;
    }
  }

  if (best.parameters.empty()) throw SolverFailure("optimize_settings: every evaluation failed");
  best.settings = family.map(best.parameters);
  if (options.robust) best.value = singlet_violation(best.settings, grid, options.include_marginals);
  best.grid_margin = std::max(0.0, best.value);
  if (options.stability_factor == 0) {
    best.refined_value = best.value;
    best.refined_grid_atoms = grid.size();
    best.stable = best.grid_margin > 0.0;
  } else {
    best.refined_grid_atoms = refined->size();
    best.refined_value = singlet_violation(best.settings, *refined, options.include_marginals);
    const double refined_margin = std::max(0.0, best.refined_value);
    best.stable = best.grid_margin > 0.0 && refined_margin > 0.0 &&
                  std::abs(best.grid_margin - refined_margin) <=
                      options.stability_tolerance * std::max(best.grid_margin, refined_margin);
  }
  best.margin = best.stable ? best.grid_margin : 0.0;
  return best;
}

}  // namespace leggett
