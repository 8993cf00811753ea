#include "leggett/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leggett {

SubensembleDistribution::SubensembleDistribution(std::vector<Atom> atoms) {
  if (atoms.empty()) throw std::invalid_argument("SubensembleDistribution: no atoms");
  double total = 0.0;
  for (const Atom& atom : atoms) {
    if (!std::isfinite(atom.weight) || atom.weight < 0.0) {
      throw std::invalid_argument("SubensembleDistribution: weights must be finite and nonnegative");
    }
    total += atom.weight;
  }
  if (total <= 0.0) throw std::invalid_argument("SubensembleDistribution: total weight is zero");

  atoms_.reserve(atoms.size());
  for (Atom& atom : atoms) {
    if (atom.weight == 0.0) continue;
    atom.weight /= total;
    atoms_.push_back(atom);
  }
  cumulative_.reserve(atoms_.size());
  double running = 0.0;
  for (const Atom& atom : atoms_) {
    running += atom.weight;
    cumulative_.push_back(running);
  }
}

std::size_t SubensembleDistribution::locate(double r) const {
  const double target = r * cumulative_.back();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cumulative_.begin()),
                               atoms_.size() - 1);
}

SubensembleDistribution point_mass(const UnitVector3& u, const UnitVector3& v) {
  return SubensembleDistribution({Atom{u, v, 1.0}});
}

SubensembleDistribution isotropic_product(std::size_t side) {
  const auto lattice = sphere_grid(side);
  std::vector<Atom> atoms;
  atoms.reserve(side * side);
  for (const auto& u : lattice) {
    for (const auto& v : lattice) atoms.push_back({u, v, 1.0});
  }
  return SubensembleDistribution(std::move(atoms));
}

SubensembleDistribution isotropic_random(std::size_t n, RngStream& rng) {
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const UnitVector3 u = random_unit_vector(rng);
    const UnitVector3 v = random_unit_vector(rng);
    atoms.push_back({u, v, 1.0});
  }
  return SubensembleDistribution(std::move(atoms));
}

SubensembleDistribution mirrored(std::size_t n) {
  std::vector<Atom> atoms;
  atoms.reserve(n);
  for (const auto& u : sphere_grid(n)) atoms.push_back({u, -u, 1.0});
  return SubensembleDistribution(std::move(atoms));
}

std::string_view to_string(Coupling c) {
  switch (c) {
    case Coupling::independent:
      return "independent";
    case Coupling::comonotone:
      return "comonotone";
    case Coupling::antimonotone:
      return "antimonotone";
  }
  return "independent";
}

Coupling coupling_from_string(std::string_view name) {
  if (name == "independent") return Coupling::independent;
  if (name == "comonotone") return Coupling::comonotone;
  if (name == "antimonotone") return Coupling::antimonotone;
  throw std::invalid_argument("unknown coupling: " + std::string(name));
}

double JointLaw::probability(const OutcomePair& o) const {
  if (o.alice == 1) return o.bob == 1 ? pp : pm;
  return o.bob == 1 ? mp : mm;
}

ConditionalMarginals conditional_marginals(const UnitVector3& u, const UnitVector3& v,
                                           const SettingsPair& s) {
  return {(1.0 + dot(u, s.a)) / 2.0, (1.0 + dot(v, s.b)) / 2.0};
}

JointLaw joint_conditional_law(double p_a, double p_b, Coupling c) {
  if (!(p_a >= 0.0 && p_a <= 1.0 && p_b >= 0.0 && p_b <= 1.0)) {
    throw std::invalid_argument("joint_conditional_law: marginal probability outside [0, 1]");
  }
  switch (c) {
    case Coupling::independent:
      return {p_a * p_b, p_a * (1.0 - p_b), (1.0 - p_a) * p_b, (1.0 - p_a) * (1.0 - p_b)};
    case Coupling::comonotone: {
      const double pp = std::min(p_a, p_b);
      return {pp, p_a - pp, p_b - pp, std::max(0.0, 1.0 - p_a - p_b + pp)};
    }
    case Coupling::antimonotone: {
      const double pm = std::min(p_a, 1.0 - p_b);
      return {p_a - pm, pm, std::max(0.0, p_b - p_a + pm), 1.0 - p_b - pm};
    }
  }
  throw std::invalid_argument("joint_conditional_law: unknown coupling");
}

double conditional_correlation(const UnitVector3& u, const UnitVector3& v, const SettingsPair& s,
                               Coupling c) {
  // Closed forms of pp + mm - pm - mp for each coupling. The tight couplings
  // reuse the exact expressions of conditional_bounds, so they sit on the
  // bound bit for bit instead of a few ulps to either side.
  const double ea = dot(u, s.a);
  const double eb = dot(v, s.b);
  switch (c) {
    case Coupling::independent:
      return ea * eb;
    case Coupling::comonotone:
      return 1.0 - std::abs(ea - eb);
    case Coupling::antimonotone:
      return -1.0 + std::abs(ea + eb);
  }
  throw std::invalid_argument("conditional_correlation: unknown coupling");
}

OutcomePair sample_outcomes(const LeggettModel& m, const SettingsPair& s, RngStream& rng) {
  const Atom& atom = m.distribution.atoms()[m.distribution.locate(rng.uniform01())];
  const auto p = conditional_marginals(atom.u, atom.v, s);
  const JointLaw law = joint_conditional_law(p.p_a, p.p_b, m.coupling);
  const double r = rng.uniform01();
  if (r < law.pp) return {1, 1};
  if (r < law.pp + law.pm) return {1, -1};
  if (r < law.pp + law.pm + law.mp) return {-1, 1};
  return {-1, -1};
}

double exact_model_correlation(const LeggettModel& m, const SettingsPair& s) {
  double total = 0.0;
  for (const Atom& atom : m.distribution.atoms()) {
    total += atom.weight * conditional_correlation(atom.u, atom.v, s, m.coupling);
  }
  return std::clamp(total, -1.0, 1.0);
}

MarginalMeans exact_model_marginals(const LeggettModel& m, const SettingsPair& s) {
  MarginalMeans means{0.0, 0.0};
  for (const Atom& atom : m.distribution.atoms()) {
    means.a += atom.weight * dot(atom.u, s.a);
    means.b += atom.weight * dot(atom.v, s.b);
  }
  return means;
}

}  // namespace leggett
