#pragma once

#include <span>

#include "leggett/model.hpp"

namespace leggett {

/// Interval [lower, upper] for E(AB); always -1 <= lower <= upper <= 1.
struct LeggettBounds {
  double lower;
  double upper;

  /// `tolerance` absorbs floating-point rounding only; couplings that attain
  /// a bound reach it up to a few ulps.
  bool contains(double value, double tolerance = 0.0) const {
    return lower - tolerance <= value && value <= upper + tolerance;
  }
};

struct BoundsVerdict {
  bool satisfied;
  /// min(value - lower, upper - value), before the statistical allowance.
  double margin;
  double k_sigma;
};

/// The three sides of -1 + |A + B| = AB = 1 - |A - B|.
struct IdentityTerms {
  int lhs;
  int mid;
  int rhs;
};

/// Throws std::invalid_argument unless both outcomes are ±1.
IdentityTerms pointwise_identity(const OutcomePair& o);

/// -1 + |u·a + v·b| <= E(AB | u, v) <= 1 - |u·a - v·b|.
LeggettBounds conditional_bounds(const UnitVector3& u, const UnitVector3& v, const SettingsPair& s);

/// Atom-weighted average of the conditional bound terms. Throws
/// std::invalid_argument for an empty atom list.
LeggettBounds averaged_bounds(std::span<const Atom> atoms, const SettingsPair& s);
LeggettBounds averaged_bounds(const SubensembleDistribution& d, const SettingsPair& s);

inline constexpr double kDefaultKSigma = 4.0;

/// Satisfied iff lower - k·se <= value <= upper + k·se.
BoundsVerdict check_bounds(double value, double se, const LeggettBounds& b,
                           double k_sigma = kDefaultKSigma);

}  // namespace leggett
