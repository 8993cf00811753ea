#include "doctest.h"

#include <array>
#include <cmath>
#include <limits>

#include "leggett/rng.hpp"
#include "leggett/simplex.hpp"

using namespace leggett;

namespace {

DenseMatrix matrix(std::size_t rows, std::size_t cols, std::initializer_list<double> values) {
  DenseMatrix m(rows, cols);
  std::size_t k = 0;
  for (double v : values) {
    m(k / cols, k % cols) = v;
    ++k;
  }
  return m;
}

// Solves a 3x3 system by Cramer's rule; returns false when singular.
bool solve3(const std::array<std::array<double, 3>, 3>& m, const std::array<double, 3>& rhs,
            std::array<double, 3>& x) {
  const auto det = [](const std::array<std::array<double, 3>, 3>& a) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double d = det(m);
  if (std::abs(d) < 1e-12) return false;
  for (int c = 0; c < 3; ++c) {
    auto replaced = m;
    for (int r = 0; r < 3; ++r) replaced[r][c] = rhs[r];
    x[c] = det(replaced) / d;
  }
  return true;
}

// Optimum of max cᵀx, Ax <= b, x >= 0 (3 rows, 3 columns) by enumerating
// every basis of [A | I].
double brute_force_optimum(const DenseMatrix& a, const std::array<double, 3>& b, const std::array<double, 3>& c) {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) {
      for (int k = j + 1; k < 6; ++k) {
        const int cols[3] = {i, j, k};
        std::array<std::array<double, 3>, 3> m{};
        for (int r = 0; r < 3; ++r) {
          for (int q = 0; q < 3; ++q) {
            const int col = cols[q];
            m[r][q] = col < 3 ? a(r, col) : (col - 3 == r ? 1.0 : 0.0);
          }
        }
        std::array<double, 3> x{};
        if (!solve3(m, b, x)) continue;
        if (x[0] < -1e-12 || x[1] < -1e-12 || x[2] < -1e-12) continue;
        double value = 0.0;
        for (int q = 0; q < 3; ++q) {
          if (cols[q] < 3) value += c[cols[q]] * x[q];
        }
        best = std::max(best, value);
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("textbook maximization") {
  // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), value 36.
  const auto a = matrix(3, 2, {1, 0, 0, 2, 3, 2});
  const std::vector<double> b = {4, 12, 18};
  const std::vector<double> c = {3, 5};
  const auto sol = maximize(a, b, c);
  CHECK(sol.objective == doctest::Approx(36.0));
  CHECK(sol.x[0] == doctest::Approx(2.0));
  CHECK(sol.x[1] == doctest::Approx(6.0));
  // Dual optimum (0, 1.5, 1).
  CHECK(sol.duals[0] == doctest::Approx(0.0).scale(1.0));
  CHECK(sol.duals[1] == doctest::Approx(1.5));
  CHECK(sol.duals[2] == doctest::Approx(1.0));
}

TEST_CASE("random small programs match vertex enumeration") {
  RngStream rng(RngSeed{55, 0});
  for (int trial = 0; trial < 300; ++trial) {
    DenseMatrix a(3, 3);
    std::array<double, 3> b{}, c{};
    for (int r = 0; r < 3; ++r) {
      for (int q = 0; q < 3; ++q) a(r, q) = 0.1 + rng.uniform01();
      b[r] = trial % 5 == 0 ? 0.0 : rng.uniform01();
      c[r] = rng.uniform01() - 0.2;
    }
    const auto sol = maximize(a, b, c);
    const double oracle = brute_force_optimum(a, b, c);
    REQUIRE(std::abs(sol.objective - oracle) <= 1e-9);

    // Primal feasibility, dual feasibility and strong duality.
    double primal = 0.0, dual = 0.0;
    for (int q = 0; q < 3; ++q) primal += c[q] * sol.x[q];
    for (int r = 0; r < 3; ++r) {
      double row = 0.0;
      for (int q = 0; q < 3; ++q) row += a(r, q) * sol.x[q];
      CHECK(row <= b[r] + 1e-12);
      dual += b[r] * sol.duals[r];
    }
    for (int q = 0; q < 3; ++q) {
      double col = 0.0;
      for (int r = 0; r < 3; ++r) col += a(r, q) * sol.duals[r];
      CHECK(col >= c[q] - 1e-12);
    }
    CHECK(std::abs(primal - sol.objective) <= 1e-12);
    CHECK(std::abs(dual - sol.objective) <= 1e-12);
  }
}

TEST_CASE("errors") {
  const auto a = matrix(1, 2, {1, -1});
  const std::vector<double> b = {1};
  CHECK_THROWS_AS(maximize(a, b, std::vector<double>{0, 1}), SolverFailure);
  CHECK_THROWS_AS(maximize(a, b, std::vector<double>{1}), std::invalid_argument);
  CHECK_THROWS_AS(maximize(a, std::vector<double>{-1}, std::vector<double>{1, 1}), std::invalid_argument);
}

TEST_CASE("deterministic on degenerate programs") {
  // Many equal columns and zero right-hand sides exercise the tie-breaking.
  DenseMatrix a(4, 6);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t q = 0; q < 6; ++q) a(r, q) = (r + q) % 2 == 0 ? 1.0 : 2.0;
  }
  const std::vector<double> b = {1, 1, 0, 0};
  const std::vector<double> c(6, 1.0);
  const auto first = maximize(a, b, c);
  const auto second = maximize(a, b, c);
  CHECK(first.x == second.x);
  CHECK(first.duals == second.duals);
  CHECK(first.objective == second.objective);
}
