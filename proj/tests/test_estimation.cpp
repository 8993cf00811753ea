#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "leggett/estimation.hpp"

using namespace leggett;

namespace {
const UnitVector3 ex = UnitVector3::normalized(1, 0, 0);
const UnitVector3 ey = UnitVector3::normalized(0, 1, 0);
const UnitVector3 ez = UnitVector3::normalized(0, 0, 1);
}  // namespace

TEST_CASE("estimate_from_sum uses the exact ±1 standard error") {
  const auto e = estimate_from_sum(20, 100);
  CHECK(e.mean == 0.2);
  CHECK(e.se == doctest::Approx(std::sqrt(0.96 / 100)));
  CHECK(estimate_from_sum(100, 100).se == 0.0);
  CHECK(estimate_from_sum(-100, 100).se == 0.0);
  CHECK_THROWS_AS(estimate_from_sum(0, 0), std::invalid_argument);
}

TEST_CASE("degenerate model estimates") {
  const LeggettModel m{point_mass(ez, ex), Coupling::independent};
  const auto e = estimate_correlation(m, {ez, ex}, 100, RngSeed{1, 0});
  CHECK(e.mean == 1.0);
  CHECK(e.se == 0.0);
  CHECK(e.n == 100);
  CHECK(estimate_marginals(m, {ez, ex}, 100, RngSeed{1, 0}).a.mean == 1.0);
}

TEST_CASE("zero sample count is rejected") {
  const LeggettModel m{point_mass(ez, ex), Coupling::independent};
  CHECK_THROWS_AS(estimate_correlation(m, {ez, ex}, 0, RngSeed{1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(estimate_marginals(m, {ez, ex}, 0, RngSeed{1, 0}), std::invalid_argument);
}

TEST_CASE("orthogonal point mass averages to zero") {
  const LeggettModel m{point_mass(ex, ey), Coupling::independent};
  const auto e = estimate_correlation(m, {ez, ez}, 100000, RngSeed{2, 0});
  CHECK(std::abs(e.mean) <= 4.0 * e.se);
}

TEST_CASE("mirrored isotropic model at a = b gives -1/3") {
  const LeggettModel m{mirrored(10000), Coupling::independent};
  const SettingsPair s{ez, ez};
  // -E[(u·a)^2] = -1/3 for uniform u; the lattice reproduces it closely.
  const double exact = exact_model_correlation(m, s);
  CHECK(std::abs(exact + 1.0 / 3.0) < 1e-3);
  const auto e = estimate_correlation(m, s, 100000, RngSeed{3, 0});
  CHECK(std::abs(e.mean + 1.0 / 3.0) <= 4.0 * e.se);
  CHECK(std::abs(e.mean - exact) <= 4.0 * e.se);
}

TEST_CASE("marginal estimates") {
  const LeggettModel iso{isotropic_product(30), Coupling::independent};
  const auto iso_est = estimate_marginals(iso, {ex, ey}, 100000, RngSeed{4, 0});
  CHECK(std::abs(iso_est.a.mean) <= 4.0 * iso_est.a.se);
  CHECK(std::abs(iso_est.b.mean) <= 4.0 * iso_est.b.se);

  const auto u = UnitVector3::from_spherical(std::acos(0.6), 0.4);
  const LeggettModel tilted{point_mass(u, ey), Coupling::comonotone};
  const auto est = estimate_marginals(tilted, {ez, ex}, 100000, RngSeed{5, 0});
  CHECK(std::abs(est.a.mean - 0.6) <= 4.0 * est.a.se);
}

TEST_CASE("results do not depend on the thread count") {
  RngStream build(RngSeed{6, 0});
  const LeggettModel m{isotropic_random(50, build), Coupling::antimonotone};
  const SettingsPair s{random_unit_vector(build), random_unit_vector(build)};
  const auto one = estimate_correlation(m, s, 50001, RngSeed{7, 3}, {1});
  for (unsigned threads : {2u, 3u, 8u}) {
    const auto many = estimate_correlation(m, s, 50001, RngSeed{7, 3}, {threads});
    CHECK(many.mean == one.mean);
    CHECK(many.se == one.se);
  }
  const auto other_seed = estimate_correlation(m, s, 50001, RngSeed{8, 3}, {1});
  CHECK(other_seed.mean != one.mean);
}

TEST_CASE("Monte Carlo agrees with the exact oracle") {
  RngStream rng(RngSeed{9, 0});
  constexpr Coupling couplings[] = {Coupling::independent, Coupling::comonotone, Coupling::antimonotone};
  int agree = 0;
  const int configs = 12;
  for (int i = 0; i < configs; ++i) {
    const LeggettModel m{isotropic_random(1 + i * 7, rng), couplings[i % 3]};
    const SettingsPair s{random_unit_vector(rng), random_unit_vector(rng)};
    const auto e = estimate_correlation(m, s, 100000, RngSeed{10, static_cast<std::uint64_t>(i)});
    CHECK(e.mean >= -1.0);
    CHECK(e.mean <= 1.0);
    agree += std::abs(e.mean - exact_model_correlation(m, s)) <= 4.0 * e.se ? 1 : 0;
  }
  CHECK(agree >= configs - 1);
}

TEST_CASE("error shrinks as 1/sqrt(n)") {
  RngStream build(RngSeed{11, 0});
  const LeggettModel m{isotropic_random(20, build), Coupling::independent};
  const SettingsPair s{random_unit_vector(build), random_unit_vector(build)};
  const double exact = exact_model_correlation(m, s);
  double small = 0.0, large = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    small += std::abs(estimate_correlation(m, s, 10000, RngSeed{seed, 100}).mean - exact);
    large += std::abs(estimate_correlation(m, s, 40000, RngSeed{seed, 200}).mean - exact);
  }
  const double ratio = large / small;
  CHECK(ratio >= 0.35);
  CHECK(ratio <= 0.65);
}
