#include "leggett/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace leggett {

IdentityTerms pointwise_identity(const OutcomePair& o) {
  const auto valid = [](int x) { return x == 1 || x == -1; };
  if (!valid(o.alice) || !valid(o.bob)) {
    throw std::invalid_argument("pointwise_identity: outcomes must be +1 or -1");
  }
  return {-1 + std::abs(o.alice + o.bob), o.alice * o.bob, 1 - std::abs(o.alice - o.bob)};
}

LeggettBounds conditional_bounds(const UnitVector3& u, const UnitVector3& v, const SettingsPair& s) {
  const double ea = dot(u, s.a);
  const double eb = dot(v, s.b);
  return {-1.0 + std::abs(ea + eb), 1.0 - std::abs(ea - eb)};
}

LeggettBounds averaged_bounds(std::span<const Atom> atoms, const SettingsPair& s) {
  if (atoms.empty()) throw std::invalid_argument("averaged_bounds: empty atom list");
  // Weighted sums of the per-atom bounds, in the same order as
  // exact_model_correlation. Rounding is monotone, so per-atom containment
  // carries over to the averages without any allowance.
  double lower = 0.0;
  double upper = 0.0;
  for (const Atom& atom : atoms) {
    const LeggettBounds b = conditional_bounds(atom.u, atom.v, s);
    lower += atom.weight * b.lower;
    upper += atom.weight * b.upper;
  }
  return {std::clamp(lower, -1.0, 1.0), std::clamp(upper, -1.0, 1.0)};
}

LeggettBounds averaged_bounds(const SubensembleDistribution& d, const SettingsPair& s) {
  return averaged_bounds(d.atoms(), s);
}

BoundsVerdict check_bounds(double value, double se, const LeggettBounds& b, double k_sigma) {
  const double allowance = k_sigma * se;
  return {b.lower - allowance <= value && value <= b.upper + allowance,
          std::min(value - b.lower, b.upper - value), k_sigma};
}

}  // namespace leggett
