#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "leggett/rng.hpp"
#include "leggett/sphere.hpp"

namespace leggett {

/// Measurement settings of the two apparatuses.
struct SettingsPair {
  UnitVector3 a;
  UnitVector3 b;
};

/// One run's outcomes; both values are expected in {-1, +1}.
struct OutcomePair {
  int alice = 1;
  int bob = 1;

  friend bool operator==(const OutcomePair&, const OutcomePair&) = default;
};

/// A weighted point mass of the subensemble distribution.
struct Atom {
  UnitVector3 u;
  UnitVector3 v;
  double weight = 1.0;
};

/// Settings-independent law of the hidden pair (u, v), held as weighted atoms.
/// Weights are nonnegative, sum to one and zero-weight atoms are pruned.
class SubensembleDistribution {
 public:
  /// Normalizes the given weights. Throws std::invalid_argument for an empty
  /// list, a negative or non-finite weight, or a zero total.
  explicit SubensembleDistribution(std::vector<Atom> atoms);

  std::span<const Atom> atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }

  /// Index of the atom selected by a uniform draw r in [0, 1).
  std::size_t locate(double r) const;

 private:
  std::vector<Atom> atoms_;
  std::vector<double> cumulative_;
};

SubensembleDistribution point_mass(const UnitVector3& u, const UnitVector3& v);

/// Equal-weight product of two Fibonacci lattices with `side` points each.
SubensembleDistribution isotropic_product(std::size_t side);

/// `n` equal-weight atoms with u and v drawn independently and uniformly.
SubensembleDistribution isotropic_random(std::size_t n, RngStream& rng);

/// Equal-weight atoms (u, -u) over a Fibonacci lattice of `n` points.
SubensembleDistribution mirrored(std::size_t n);

/// How the outcomes A and B are coupled given (u, v). Every choice has the
/// same Malus-law marginals.
enum class Coupling { independent, comonotone, antimonotone };

std::string_view to_string(Coupling c);
/// Throws std::invalid_argument for an unknown name.
Coupling coupling_from_string(std::string_view name);

struct LeggettModel {
  SubensembleDistribution distribution;
  Coupling coupling = Coupling::independent;
};

/// P(A = +1 | u, v) and P(B = +1 | u, v).
struct ConditionalMarginals {
  double p_a;
  double p_b;
};

/// Probabilities of (A, B) = (+,+), (+,-), (-,+), (-,-).
struct JointLaw {
  double pp;
  double pm;
  double mp;
  double mm;

  double probability(const OutcomePair& o) const;
  /// E(AB) under this law.
  double correlation() const { return pp + mm - pm - mp; }
};

ConditionalMarginals conditional_marginals(const UnitVector3& u, const UnitVector3& v,
                                           const SettingsPair& s);

/// Throws std::invalid_argument if p_a or p_b lies outside [0, 1].
JointLaw joint_conditional_law(double p_a, double p_b, Coupling c);

/// E(AB | u, v) for the given coupling.
double conditional_correlation(const UnitVector3& u, const UnitVector3& v,
                               const SettingsPair& s, Coupling c);

OutcomePair sample_outcomes(const LeggettModel& m, const SettingsPair& s, RngStream& rng);

/// Exact E(AB) = Σ w E(AB | u, v).
double exact_model_correlation(const LeggettModel& m, const SettingsPair& s);

/// Exact E(A) = (Σ w u)·a and E(B) = (Σ w v)·b.
struct MarginalMeans {
  double a;
  double b;
};
MarginalMeans exact_model_marginals(const LeggettModel& m, const SettingsPair& s);

}  // namespace leggett
