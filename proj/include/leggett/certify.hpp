#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leggett/model.hpp"
#include "leggett/simplex.hpp"

namespace leggett {

/// Candidate support point (u, v) for a discretized subensemble distribution.
struct GridAtom {
  UnitVector3 u;
  UnitVector3 v;
};

using CandidateGrid = std::vector<GridAtom>;

/// Product of two Fibonacci lattices of `side` points each, followed by
/// `mirrored_count` mirrored atoms (u, -u).
CandidateGrid certification_grid(std::size_t side, std::size_t mirrored_count);

/// Default split of `total_atoms`: the largest side with side² <= 0.8 total,
/// the remainder as mirrored atoms. Throws std::invalid_argument for 0.
CandidateGrid certification_grid(std::size_t total_atoms);

/// FNV-1a over the bit patterns of every atom component, as 16 hex digits.
std::string grid_hash(std::span<const GridAtom> grid);

/// Target correlation for one settings pair, optionally with target means of A and B.
struct TargetConstraint {
  SettingsPair settings;
  double correlation = 0.0;
  std::optional<double> marginal_a;
  std::optional<double> marginal_b;
};

/// Constraints on the atom weights w >= 0. Row 2j of `inequalities` is
/// Σ w |u·a_j + v·b_j| <= 1 + E_j and row 2j+1 is Σ w |u·a_j - v·b_j| <= 1 - E_j.
/// Row 0 of `equalities` is the normalization Σ w = 1; with marginals enabled,
/// rows 2j+1 and 2j+2 fix Σ w u·a_j and Σ w v·b_j.
struct LinearSystem {
  DenseMatrix inequalities;
  std::vector<double> inequality_rhs;
  DenseMatrix equalities;
  std::vector<double> equality_rhs;
};

struct CertificationProblem {
  CandidateGrid grid;
  std::vector<TargetConstraint> constraints;
  bool include_marginals = false;
  LinearSystem system;
};

/// Throws std::invalid_argument for an empty grid or constraint list, a
/// target outside [-1, 1], or missing marginals when they are enabled.
CertificationProblem build_problem(CandidateGrid grid, std::vector<TargetConstraint> constraints,
                                   bool include_marginals = false);

enum class FeasibilityStatus { feasible, infeasible };

inline constexpr double kFeasibilityTolerance = 1e-9;

/// Outcome of a feasibility solve.
///
/// `value` is the smallest achievable worst-case constraint violation over
/// all normalized weight vectors meeting the equalities: negative means slack,
/// positive means no discretized distribution reproduces the targets.
///
/// An infeasibility proof is a vector y >= 0 over the inequality rows
/// (normalized to Σ y = 1) and free multipliers s over the marginal equality
/// rows such that, for every atom i,
///   Σ_j y_j (G_ji - h_j) + Σ_k s_k (C_ki - d_k) >= margin > 0.
/// Summing against any admissible w would give a quantity that is both
/// <= 0 and >= margin.
struct FeasibilityCertificate {
  FeasibilityStatus status = FeasibilityStatus::feasible;
  double value = 0.0;
  std::vector<double> weights;
  std::vector<double> farkas_inequality;
  std::vector<double> farkas_equality;
  double margin = 0.0;
  std::string grid_hash;
};

/// Deterministic for a given problem. Throws SolverFailure on numerical breakdown.
FeasibilityCertificate solve(const CertificationProblem& p);

/// Re-derives every coefficient from the grid and the targets and checks the
/// certificate with plain summation. Returns false on a grid hash mismatch.
/// Throws std::invalid_argument when vector lengths do not match the problem.
bool verify_certificate(const CertificationProblem& p, const FeasibilityCertificate& c);

/// Singlet targets: E = -a·b, and zero marginals when requested.
std::vector<TargetConstraint> singlet_targets(std::span<const SettingsPair> settings,
                                              bool with_marginals);

/// Targets reproduced exactly by `m`.
std::vector<TargetConstraint> model_targets(const LeggettModel& m,
                                            std::span<const SettingsPair> settings,
                                            bool with_marginals);

/// The witness of a feasible certificate as a distribution over grid atoms.
/// Throws std::invalid_argument for an infeasible certificate.
SubensembleDistribution witness_distribution(const CertificationProblem& p,
                                             const FeasibilityCertificate& c);

}  // namespace leggett
