#include "leggett/certify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace leggett {

namespace {

// Entries of G - h lie in [-2, 2]; shifting by 3 makes the game matrix
// strictly positive.
constexpr double kGameShift = 3.0;

bool within_unit_interval(double x) { return std::isfinite(x) && x >= -1.0 && x <= 1.0; }

}  // namespace

CandidateGrid certification_grid(std::size_t side, std::size_t mirrored_count) {
  CandidateGrid grid;
  grid.reserve(side * side + mirrored_count);
  if (side > 0) {
    const auto lattice = sphere_grid(side);
    for (const auto& u : lattice) {
      for (const auto& v : lattice) grid.push_back({u, v});
    }
  }
  if (mirrored_count > 0) {
    for (const auto& u : sphere_grid(mirrored_count)) grid.push_back({u, -u});
  }
  return grid;
}

CandidateGrid certification_grid(std::size_t total_atoms) {
  if (total_atoms == 0) throw std::invalid_argument("certification_grid: need at least one atom");
  auto side = static_cast<std::size_t>(std::floor(std::sqrt(0.8 * static_cast<double>(total_atoms))));
  while (side * side > total_atoms) --side;
  return certification_grid(side, total_atoms - side * side);
}

std::string grid_hash(std::span<const GridAtom> grid) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  const auto feed = [&h](double x) {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (bits >> (8 * byte)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  for (const GridAtom& atom : grid) {
    for (double x : atom.u.components()) feed(x);
    for (double x : atom.v.components()) feed(x);
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

CertificationProblem build_problem(CandidateGrid grid, std::vector<TargetConstraint> constraints,
                                   bool include_marginals) {
  if (grid.empty()) throw std::invalid_argument("build_problem: empty atom grid");
  if (constraints.empty()) throw std::invalid_argument("build_problem: no constraints");
  for (const TargetConstraint& c : constraints) {
    if (!within_unit_interval(c.correlation)) {
      throw std::invalid_argument("build_problem: target correlation outside [-1, 1]");
    }
    if (include_marginals) {
      if (!c.marginal_a || !c.marginal_b) {
        throw std::invalid_argument("build_problem: marginals enabled but a target lacks them");
      }
      if (!within_unit_interval(*c.marginal_a) || !within_unit_interval(*c.marginal_b)) {
        throw std::invalid_argument("build_problem: target marginal outside [-1, 1]");
      }
    }
  }

  const std::size_t n = grid.size();
  const std::size_t pairs = constraints.size();
  LinearSystem sys;
  sys.inequalities = DenseMatrix(2 * pairs, n);
  sys.inequality_rhs.resize(2 * pairs);
  const std::size_t eq_rows = 1 + (include_marginals ? 2 * pairs : 0);
  sys.equalities = DenseMatrix(eq_rows, n);
  sys.equality_rhs.assign(eq_rows, 0.0);

  for (std::size_t i = 0; i < n; ++i) sys.equalities(0, i) = 1.0;
  sys.equality_rhs[0] = 1.0;

  for (std::size_t j = 0; j < pairs; ++j) {
    const TargetConstraint& c = constraints[j];
    sys.inequality_rhs[2 * j] = 1.0 + c.correlation;
    sys.inequality_rhs[2 * j + 1] = 1.0 - c.correlation;
    if (include_marginals) {
      sys.equality_rhs[2 * j + 1] = *c.marginal_a;
      sys.equality_rhs[2 * j + 2] = *c.marginal_b;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double ea = dot(grid[i].u, c.settings.a);
      const double eb = dot(grid[i].v, c.settings.b);
      sys.inequalities(2 * j, i) = std::abs(ea + eb);
      sys.inequalities(2 * j + 1, i) = std::abs(ea - eb);
      if (include_marginals) {
        sys.equalities(2 * j + 1, i) = ea;
        sys.equalities(2 * j + 2, i) = eb;
      }
    }
  }
  return {std::move(grid), std::move(constraints), include_marginals, std::move(sys)};
}

// The solve is phrased as a matrix game: minimize over the weight simplex
// (restricted to the marginal equalities) the largest row of (G - h)w. With
// P = G - h + shift > 0 the substitution x = w / value turns this into
//   max Σx  s.t.  P x <= 1,  Q x <= 0,  -Q x <= 0,  x >= 0,
// where Q = C - d holds the homogenized marginal rows. The origin is
// feasible, so a single simplex phase suffices; the optimal duals of the P
// rows are the Farkas multipliers.
FeasibilityCertificate solve(const CertificationProblem& p) {
  const LinearSystem& sys = p.system;
  const std::size_t n = p.grid.size();
  const std::size_t ineq = sys.inequalities.rows();
  const std::size_t eq = sys.equalities.rows() - 1;

  DenseMatrix a(ineq + 2 * eq, n);
  for (std::size_t j = 0; j < ineq; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      a(j, i) = sys.inequalities(j, i) - sys.inequality_rhs[j] + kGameShift;
    }
  }
  for (std::size_t k = 0; k < eq; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      const double q = sys.equalities(k + 1, i) - sys.equality_rhs[k + 1];
      a(ineq + k, i) = q;
      a(ineq + eq + k, i) = -q;
    }
  }
  std::vector<double> b(ineq + 2 * eq, 0.0);
  std::fill(b.begin(), b.begin() + static_cast<std::ptrdiff_t>(ineq), 1.0);
  const std::vector<double> c(n, 1.0);

  const SimplexSolution lp = maximize(a, b, c);

  FeasibilityCertificate cert;
  cert.grid_hash = grid_hash(p.grid);

  double total = 0.0;
  for (double x : lp.x) total += x;

  if (total > 0.0) {
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = lp.x[i] / total;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ineq; ++j) {
      double lhs = 0.0;
      for (std::size_t i = 0; i < n; ++i) lhs += sys.inequalities(j, i) * w[i];
      worst = std::max(worst, lhs - sys.inequality_rhs[j]);
    }
    double residual = 0.0;
    for (std::size_t k = 1; k <= eq; ++k) {
      double lhs = 0.0;
      for (std::size_t i = 0; i < n; ++i) lhs += sys.equalities(k, i) * w[i];
      residual = std::max(residual, std::abs(lhs - sys.equality_rhs[k]));
    }
    if (worst <= kFeasibilityTolerance && residual <= kFeasibilityTolerance) {
      cert.status = FeasibilityStatus::feasible;
      cert.value = worst;
      cert.weights = std::move(w);
      return cert;
    }
  }

  std::vector<double> y(lp.duals.begin(), lp.duals.begin() + static_cast<std::ptrdiff_t>(ineq));
  std::vector<double> s(eq);
  for (std::size_t k = 0; k < eq; ++k) s[k] = lp.duals[ineq + k] - lp.duals[ineq + eq + k];
  double scale = 0.0;
  for (double v : y) scale += v;
  if (scale <= 0.0) {
    for (double v : s) scale = std::max(scale, std::abs(v));
  }
  if (!(scale > 0.0)) throw SolverFailure("solve: no feasible witness and an empty dual");
  for (double& v : y) v /= scale;
  for (double& v : s) v /= scale;

  double margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    double coef = 0.0;
    for (std::size_t j = 0; j < ineq; ++j) coef += y[j] * (sys.inequalities(j, i) - sys.inequality_rhs[j]);
    for (std::size_t k = 0; k < eq; ++k) {
      coef += s[k] * (sys.equalities(k + 1, i) - sys.equality_rhs[k + 1]);
    }
    margin = std::min(margin, coef);
  }
  if (!(margin > kFeasibilityTolerance)) {
    throw SolverFailure("solve: neither a feasible witness nor an infeasibility proof was found");
  }
  cert.status = FeasibilityStatus::infeasible;
  cert.value = margin;
  cert.farkas_inequality = std::move(y);
  cert.farkas_equality = std::move(s);
  cert.margin = margin;
  return cert;
}

bool verify_certificate(const CertificationProblem& p, const FeasibilityCertificate& c) {
  const std::size_t n = p.grid.size();
  const std::size_t pairs = p.constraints.size();
  const std::size_t eq = p.include_marginals ? 2 * pairs : 0;

  if (c.status == FeasibilityStatus::feasible) {
    if (c.weights.size() != n) throw std::invalid_argument("verify_certificate: weight count mismatch");
  } else if (c.farkas_inequality.size() != 2 * pairs || c.farkas_equality.size() != eq) {
    throw std::invalid_argument("verify_certificate: multiplier count mismatch");
  }
  if (c.grid_hash != grid_hash(p.grid)) return false;

  if (c.status == FeasibilityStatus::feasible) {
    double total = 0.0;
    for (double w : c.weights) {
      if (!std::isfinite(w) || w < 0.0) return false;
      total += w;
    }
    if (std::abs(total - 1.0) > kFeasibilityTolerance) return false;
    for (const TargetConstraint& t : p.constraints) {
      double plus = 0.0, minus = 0.0, mean_a = 0.0, mean_b = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double ea = dot(p.grid[i].u, t.settings.a);
        const double eb = dot(p.grid[i].v, t.settings.b);
        plus += c.weights[i] * std::abs(ea + eb);
        minus += c.weights[i] * std::abs(ea - eb);
        mean_a += c.weights[i] * ea;
        mean_b += c.weights[i] * eb;
      }
      if (plus > 1.0 + t.correlation + kFeasibilityTolerance) return false;
      if (minus > 1.0 - t.correlation + kFeasibilityTolerance) return false;
      if (p.include_marginals) {
        if (std::abs(mean_a - *t.marginal_a) > kFeasibilityTolerance) return false;
        if (std::abs(mean_b - *t.marginal_b) > kFeasibilityTolerance) return false;
      }
    }
    return true;
  }

  if (!(c.margin > kFeasibilityTolerance)) return false;
  for (double y : c.farkas_inequality) {
    if (!std::isfinite(y) || y < 0.0) return false;
  }
  for (double s : c.farkas_equality) {
    if (!std::isfinite(s)) return false;
  }
  for (std::size_t i = 0; i < n; ++i) {
    double coef = 0.0;
    for (std::size_t j = 0; j < pairs; ++j) {
      const TargetConstraint& t = p.constraints[j];
      const double ea = dot(p.grid[i].u, t.settings.a);
      const double eb = dot(p.grid[i].v, t.settings.b);
      coef += c.farkas_inequality[2 * j] * (std::abs(ea + eb) - (1.0 + t.correlation));
      coef += c.farkas_inequality[2 * j + 1] * (std::abs(ea - eb) - (1.0 - t.correlation));
      if (p.include_marginals) {
        coef += c.farkas_equality[2 * j] * (ea - *t.marginal_a);
        coef += c.farkas_equality[2 * j + 1] * (eb - *t.marginal_b);
      }
    }
    if (coef < c.margin - 1e-12) return false;
  }
  return true;
}

std::vector<TargetConstraint> singlet_targets(std::span<const SettingsPair> settings,
                                              bool with_marginals) {
  std::vector<TargetConstraint> targets;
  targets.reserve(settings.size());
  for (const SettingsPair& s : settings) {
    TargetConstraint t{s, -dot(s.a, s.b), std::nullopt, std::nullopt};
    if (with_marginals) {
      t.marginal_a = 0.0;
      t.marginal_b = 0.0;
    }
    targets.push_back(t);
  }
  return targets;
}

std::vector<TargetConstraint> model_targets(const LeggettModel& m,
                                            std::span<const SettingsPair> settings,
                                            bool with_marginals) {
  std::vector<TargetConstraint> targets;
  targets.reserve(settings.size());
  for (const SettingsPair& s : settings) {
    TargetConstraint t{s, exact_model_correlation(m, s), std::nullopt, std::nullopt};
    if (with_marginals) {
      const MarginalMeans means = exact_model_marginals(m, s);
      t.marginal_a = means.a;
      t.marginal_b = means.b;
    }
    targets.push_back(t);
  }
  return targets;
}

SubensembleDistribution witness_distribution(const CertificationProblem& p,
                                             const FeasibilityCertificate& c) {
  if (c.status != FeasibilityStatus::feasible || c.weights.size() != p.grid.size()) {
    throw std::invalid_argument("witness_distribution: certificate carries no witness");
  }
  std::vector<Atom> atoms;
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    if (c.weights[i] > 0.0) atoms.push_back({p.grid[i].u, p.grid[i].v, c.weights[i]});
  }
  return SubensembleDistribution(std::move(atoms));
}

}  // namespace leggett
