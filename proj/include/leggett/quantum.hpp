#pragma once

#include <functional>

#include "leggett/model.hpp"

namespace leggett {

struct ChshScenario {
  UnitVector3 a;
  UnitVector3 a_prime;
  UnitVector3 b;
  UnitVector3 b_prime;
};

using CorrelationFunction = std::function<double(const SettingsPair&)>;

/// Singlet-state prediction E(AB) = -a·b (both marginals vanish).
double singlet_correlation(const SettingsPair& s);

/// S = E(a,b) + E(a,b') + E(a',b) - E(a',b').
double chsh_value(const ChshScenario& sc, const CorrelationFunction& corr);

/// Coplanar settings at 0°, 90° (Alice) and 225°, 135° (Bob), where the
/// singlet reaches |S| = 2√2.
ChshScenario standard_chsh_scenario();

}  // namespace leggett
