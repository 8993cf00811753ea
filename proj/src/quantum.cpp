#include "leggett/quantum.hpp"

#include <numbers>

namespace leggett {

double singlet_correlation(const SettingsPair& s) { return -dot(s.a, s.b); }

double chsh_value(const ChshScenario& sc, const CorrelationFunction& corr) {
  return corr({sc.a, sc.b}) + corr({sc.a, sc.b_prime}) + corr({sc.a_prime, sc.b}) -
         corr({sc.a_prime, sc.b_prime});
}

ChshScenario standard_chsh_scenario() {
  constexpr double deg = std::numbers::pi / 180.0;
  return {UnitVector3::planar(0.0), UnitVector3::planar(90.0 * deg),
          UnitVector3::planar(225.0 * deg), UnitVector3::planar(135.0 * deg)};
}

}  // namespace leggett
