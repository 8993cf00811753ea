#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "leggett/bounds.hpp"
#include "leggett/certify.hpp"
#include "leggett/quantum.hpp"

using namespace leggett;

namespace {

const UnitVector3 ex = UnitVector3::normalized(1, 0, 0);
const UnitVector3 ey = UnitVector3::normalized(0, 1, 0);
const UnitVector3 ez = UnitVector3::normalized(0, 0, 1);

// Two settings pairs and two atoms whose first-type coefficients are (2, 0)
// and (0, 2) with right-hand side 1 + E = 0.5: each weight is at most 1/4.
CertificationProblem hand_checkable() {
  const CandidateGrid grid = {{ez, ez}, {ex, ex}};
  std::vector<TargetConstraint> targets = {{{ez, ez}, -0.5, {}, {}}, {{ex, ex}, -0.5, {}, {}}};
  return build_problem(grid, targets);
}

std::vector<SettingsPair> random_settings(RngStream& rng, std::size_t count) {
  std::vector<SettingsPair> s;
  for (std::size_t i = 0; i < count; ++i) s.push_back({random_unit_vector(rng), random_unit_vector(rng)});
  return s;
}

}  // namespace

TEST_CASE("grid construction") {
  const auto grid = certification_grid(5, 7);
  CHECK(grid.size() == 32);
  for (std::size_t i = 25; i < 32; ++i) CHECK(dot(grid[i].u, grid[i].v) == -1.0);
  CHECK(certification_grid(500).size() == 500);
  CHECK(certification_grid(2000).size() == 2000);
  CHECK(certification_grid(1).size() == 1);
  CHECK_THROWS_AS(certification_grid(0), std::invalid_argument);
  CHECK(grid_hash(certification_grid(500)) == grid_hash(certification_grid(500)));
  CHECK(grid_hash(certification_grid(500)) != grid_hash(certification_grid(501)));
  CHECK(grid_hash(grid).size() == 16);
}

TEST_CASE("build_problem assembles the averaged-bound rows") {
  const CandidateGrid grid = {{ex, ey}, {ez, ez}};
  const auto p = build_problem(grid, {{{ez, ez}, 0.9, {}, {}}});
  REQUIRE(p.system.inequalities.rows() == 2);
  CHECK(p.system.inequalities(0, 0) == 0.0);
  CHECK(p.system.inequalities(1, 0) == 0.0);
  CHECK(p.system.inequality_rhs[0] == doctest::Approx(1.9));
  CHECK(p.system.inequality_rhs[1] == doctest::Approx(0.1));
  CHECK(p.system.inequalities(0, 1) == 2.0);
  REQUIRE(p.system.equalities.rows() == 1);
  CHECK(p.system.equalities(0, 0) == 1.0);
  CHECK(p.system.equality_rhs[0] == 1.0);

  const auto boundary = build_problem(grid, {{{ez, ez}, 1.0, {}, {}}});
  CHECK(boundary.system.inequality_rhs[1] == 0.0);

  const auto with_marginals = build_problem(grid, {{{ez, ez}, 0.2, 0.1, -0.1}}, true);
  CHECK(with_marginals.system.equalities.rows() == 3);
  CHECK(with_marginals.system.equality_rhs[1] == 0.1);
  CHECK(with_marginals.system.equality_rhs[2] == -0.1);
  CHECK(with_marginals.system.equalities(1, 1) == 1.0);
}

TEST_CASE("build_problem errors") {
  const CandidateGrid grid = {{ex, ey}};
  CHECK_THROWS_AS(build_problem(grid, {{{ez, ez}, 1.5, {}, {}}}), std::invalid_argument);
  CHECK_THROWS_AS(build_problem(grid, {}), std::invalid_argument);
  CHECK_THROWS_AS(build_problem({}, {{{ez, ez}, 0.0, {}, {}}}), std::invalid_argument);
  CHECK_THROWS_AS(build_problem(grid, {{{ez, ez}, 0.0, {}, {}}}, true), std::invalid_argument);
  CHECK_THROWS_AS(build_problem(grid, {{{ez, ez}, 0.0, 2.0, 0.0}}, true), std::invalid_argument);
}

TEST_CASE("hand-checkable system is infeasible with margin 1/2") {
  const auto p = hand_checkable();
  const auto c = solve(p);
  REQUIRE(c.status == FeasibilityStatus::infeasible);
  CHECK(c.margin >= 0.5 - 1e-12);
  CHECK(c.margin == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(verify_certificate(p, c));

  auto flipped = c;
  const auto largest = std::max_element(flipped.farkas_inequality.begin(), flipped.farkas_inequality.end());
  *largest = -*largest;
  CHECK_FALSE(verify_certificate(p, flipped));

  auto inflated = c;
  inflated.margin = 0.9;
  CHECK_FALSE(verify_certificate(p, inflated));
}

TEST_CASE("targets from a model on the grid are feasible") {
  RngStream rng(RngSeed{70, 0});
  const CandidateGrid grid = certification_grid(150);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Atom> atoms;
    for (int k = 0; k < 3; ++k) {
      const auto& g = grid[static_cast<std::size_t>(rng.uniform01() * grid.size())];
      atoms.push_back({g.u, g.v, 0.2 + rng.uniform01()});
    }
    const Coupling coupling = trial % 2 == 0 ? Coupling::independent : Coupling::comonotone;
    const LeggettModel model{SubensembleDistribution(atoms), coupling};
    const auto settings = random_settings(rng, 4);
    const bool marginals = trial % 3 == 0;
    const auto p = build_problem(grid, model_targets(model, settings, marginals), marginals);
    const auto c = solve(p);
    REQUIRE(c.status == FeasibilityStatus::feasible);
    CHECK(verify_certificate(p, c));

    // The witness, as a distribution, brackets every target.
    const auto witness = witness_distribution(p, c);
    for (const auto& t : p.constraints) {
      const auto b = averaged_bounds(witness, t.settings);
      CHECK(b.lower <= t.correlation + 1e-9);
      CHECK(t.correlation <= b.upper + 1e-9);
    }

    auto perturbed = c;
    perturbed.weights[0] += 0.1;
    CHECK_FALSE(verify_certificate(p, perturbed));
  }
}

TEST_CASE("a single pair is always feasible when the grid has an orthogonal atom") {
  RngStream rng(RngSeed{71, 0});
  for (double e : {-1.0, -0.7, 0.0, 0.4, 1.0}) {
    const SettingsPair s{ez, ex};
    CandidateGrid grid = certification_grid(30);
    grid.push_back({ex, ez});
    const auto p = build_problem(grid, {{s, e, {}, {}}});
    const auto c = solve(p);
    CHECK(c.status == FeasibilityStatus::feasible);
    CHECK(verify_certificate(p, c));
  }
}

TEST_CASE("verify_certificate rejects mismatches") {
  const auto p = hand_checkable();
  auto c = solve(p);
  auto wrong_hash = c;
  wrong_hash.grid_hash = "0000000000000000";
  CHECK_FALSE(verify_certificate(p, wrong_hash));

  auto wrong_size = c;
  wrong_size.farkas_inequality.push_back(0.0);
  CHECK_THROWS_AS(verify_certificate(p, wrong_size), std::invalid_argument);

  FeasibilityCertificate bogus;
  bogus.status = FeasibilityStatus::feasible;
  bogus.weights = {1.0};
  bogus.grid_hash = c.grid_hash;
  CHECK_THROWS_AS(verify_certificate(p, bogus), std::invalid_argument);
}

TEST_CASE("solve is deterministic") {
  RngStream rng(RngSeed{72, 0});
  const auto settings = random_settings(rng, 6);
  const auto p = build_problem(certification_grid(300), singlet_targets(settings, true), true);
  const auto c1 = solve(p);
  const auto c2 = solve(p);
  CHECK(c1.status == c2.status);
  CHECK(c1.value == c2.value);
  CHECK(c1.weights == c2.weights);
  CHECK(c1.farkas_inequality == c2.farkas_inequality);
  CHECK(c1.farkas_equality == c2.farkas_equality);
}

TEST_CASE("randomized problems always produce verifiable certificates") {
  RngStream rng(RngSeed{73, 0});
  int feasible = 0, infeasible = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t atoms = 5 + static_cast<std::size_t>(rng.uniform01() * 200);
    const auto settings = random_settings(rng, 1 + trial % 6);
    std::vector<TargetConstraint> targets;
    for (const auto& s : settings) {
      targets.push_back({s, 2.0 * rng.uniform01() - 1.0, 0.4 * rng.uniform01() - 0.2, 0.4 * rng.uniform01() - 0.2});
    }
    const bool marginals = trial % 2 == 1;
    const auto p = build_problem(certification_grid(atoms), targets, marginals);
    const auto c = solve(p);
    CHECK(verify_certificate(p, c));
    (c.status == FeasibilityStatus::feasible ? feasible : infeasible) += 1;
  }
  CHECK(feasible > 0);
  CHECK(infeasible > 0);
}

TEST_CASE("monotonicity") {
  RngStream rng(RngSeed{74, 0});
  for (int trial = 0; trial < 10; ++trial) {
    const auto settings = random_settings(rng, 5);
    const auto targets = singlet_targets(settings, false);
    // Adding constraints can only raise the worst-case violation.
    double previous = -std::numeric_limits<double>::infinity();
    bool was_infeasible = false;
    for (std::size_t k = 1; k <= targets.size(); ++k) {
      const auto p = build_problem(certification_grid(200),
                                   std::vector<TargetConstraint>(targets.begin(), targets.begin() + k));
      const auto c = solve(p);
      CHECK(c.value >= previous - 1e-12);
      if (was_infeasible) CHECK(c.status == FeasibilityStatus::infeasible);
      was_infeasible = c.status == FeasibilityStatus::infeasible;
      previous = c.value;
    }

    // A feasible problem stays feasible on a superset grid.
    const auto small = build_problem(certification_grid(100), {targets[0]});
    const auto c_small = solve(small);
    if (c_small.status == FeasibilityStatus::feasible) {
      CandidateGrid bigger = certification_grid(100);
      const auto extra = certification_grid(77);
      bigger.insert(bigger.end(), extra.begin(), extra.end());
      const auto big = build_problem(bigger, {targets[0]});
      const auto c_big = solve(big);
      CHECK(c_big.status == FeasibilityStatus::feasible);
      CHECK(c_big.value <= c_small.value + 1e-12);
      auto carried = c_small;
      carried.weights.resize(bigger.size(), 0.0);
      carried.grid_hash = grid_hash(bigger);
      CHECK(verify_certificate(big, carried));
    }
  }
}

TEST_CASE("duplicated settings pairs do not change the value") {
  RngStream rng(RngSeed{75, 0});
  const auto grid = certification_grid(400);
  for (int trial = 0; trial < 5; ++trial) {
    const auto settings = random_settings(rng, 3);
    auto doubled = settings;
    doubled.insert(doubled.end(), settings.begin(), settings.end());
    const double single = solve(build_problem(grid, singlet_targets(settings, false))).value;
    const double twice = solve(build_problem(grid, singlet_targets(doubled, false))).value;
    CHECK(std::abs(single - twice) <= 1e-9);
  }
}
