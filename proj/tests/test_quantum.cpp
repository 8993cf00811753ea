#include "doctest.h"

#include <cmath>
#include <numbers>

#include "leggett/quantum.hpp"

using namespace leggett;

namespace {
constexpr double kDeg = std::numbers::pi / 180.0;
const double kTsirelson = 2.0 * std::numbers::sqrt2;
}  // namespace

TEST_CASE("singlet correlation") {
  const auto a = UnitVector3::planar(0.3);
  CHECK(singlet_correlation({a, a}) == -1.0);
  CHECK(singlet_correlation({UnitVector3::planar(0.0), UnitVector3::planar(90 * kDeg)}) ==
        doctest::Approx(0.0).scale(1.0));
  CHECK(singlet_correlation({UnitVector3::planar(0.0), UnitVector3::planar(60 * kDeg)}) ==
        doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("chsh of the zero correlation") {
  CHECK(chsh_value(standard_chsh_scenario(), [](const SettingsPair&) { return 0.0; }) == 0.0);
}

TEST_CASE("singlet at the standard scenario") {
  // -cos of the four relative angles: (0,225), (0,135), (90,225), (90,135).
  const double oracle = -std::cos(-225 * kDeg) - std::cos(-135 * kDeg) - std::cos(-135 * kDeg) +
                        std::cos(-45 * kDeg);
  const double s = chsh_value(standard_chsh_scenario(), singlet_correlation);
  CHECK(std::abs(oracle - kTsirelson) <= 1e-12);
  CHECK(std::abs(s - kTsirelson) <= 1e-9);
}

TEST_CASE("coplanar grid search reaches but never exceeds Tsirelson's bound") {
  // a is fixed at 0 by rotation invariance; the other three angles scan 5° steps.
  double best = 0.0;
  for (int i = 0; i < 72; ++i) {
    for (int j = 0; j < 72; ++j) {
      for (int k = 0; k < 72; ++k) {
        const ChshScenario sc{UnitVector3::planar(0.0), UnitVector3::planar(5 * i * kDeg),
                              UnitVector3::planar(5 * j * kDeg), UnitVector3::planar(5 * k * kDeg)};
        const double s = std::abs(chsh_value(sc, singlet_correlation));
        REQUIRE(s <= kTsirelson + 1e-9);
        best = std::max(best, s);
      }
    }
  }
  CHECK(std::abs(best - kTsirelson) <= 1e-9);
}

TEST_CASE("independent-coupling models obey the classical bound") {
  RngStream rng(RngSeed{123, 0});
  double worst = 0.0;
  for (int m = 0; m < 20; ++m) {
    const LeggettModel model{isotropic_random(1 + m % 4, rng), Coupling::independent};
    const auto corr = [&model](const SettingsPair& s) { return exact_model_correlation(model, s); };
    for (int i = 0; i < 500; ++i) {
      const ChshScenario sc{random_unit_vector(rng), random_unit_vector(rng), random_unit_vector(rng),
                            random_unit_vector(rng)};
      worst = std::max(worst, std::abs(chsh_value(sc, corr)));
    }
  }
  CHECK(worst <= 2.0 + 1e-9);
  CHECK(worst > 1.0);
}

TEST_CASE("chsh and singlet correlation are rotation invariant") {
  RngStream rng(RngSeed{8, 8});
  for (int trial = 0; trial < 200; ++trial) {
    const ChshScenario sc{random_unit_vector(rng), random_unit_vector(rng), random_unit_vector(rng),
                          random_unit_vector(rng)};
    const auto r = Rotation3::random(rng);
    const ChshScenario rotated{r.apply(sc.a), r.apply(sc.a_prime), r.apply(sc.b), r.apply(sc.b_prime)};
    CHECK(std::abs(chsh_value(sc, singlet_correlation) - chsh_value(rotated, singlet_correlation)) <= 1e-12);
    const double e = singlet_correlation({sc.a, sc.b});
    CHECK(std::abs(e) <= 1.0);
    CHECK(std::abs(e - singlet_correlation({rotated.a, rotated.b})) <= 1e-12);
  }
}
