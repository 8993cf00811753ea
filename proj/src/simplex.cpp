#include "leggett/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace leggett {

namespace {

constexpr double kOptimalityTol = 1e-11;
constexpr double kPivotTol = 1e-9;
constexpr double kGrowthLimit = 1e10;
constexpr std::size_t kDegenerateRun = 50;

class Tableau {
 public:
  Tableau(const DenseMatrix& a, std::span<const double> b, std::span<const double> c)
      : m_(a.rows()), n_(a.cols()), width_(n_ + m_ + 1), t_(m_ + 1, width_), basis_(m_) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) t_(i, j) = a(i, j);
      t_(i, n_ + i) = 1.0;
      t_(i, width_ - 1) = b[i];
      basis_[i] = n_ + i;
    }
    for (std::size_t j = 0; j < n_; ++j) t_(m_, j) = -c[j];
  }

  SimplexSolution run() {
    SimplexSolution out;
    const std::size_t limit = 50 * (n_ + m_) + 1000;
    std::size_t degenerate = 0;
    for (;;) {
      const bool bland = degenerate >= kDegenerateRun;
      const std::size_t enter = entering(bland);
      if (enter == npos) break;
      const std::size_t leave = leaving(enter);
      if (leave == npos) throw SolverFailure("simplex: objective unbounded");
      const bool is_degenerate = t_(leave, width_ - 1) <= kOptimalityTol;
      degenerate = is_degenerate ? degenerate + 1 : 0;
      pivot(leave, enter);
      if (++out.pivots > limit) throw SolverFailure("simplex: iteration limit reached");
    }

    out.x.assign(n_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (basis_[i] < n_) out.x[basis_[i]] = std::max(0.0, t_(i, width_ - 1));
    }
    out.duals.resize(m_);
    for (std::size_t i = 0; i < m_; ++i) out.duals[i] = std::max(0.0, t_(m_, n_ + i));
    out.objective = t_(m_, width_ - 1);
    return out;
  }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  std::size_t entering(bool bland) const {
    std::size_t best = npos;
    double most_negative = -kOptimalityTol;
    for (std::size_t j = 0; j + 1 < width_; ++j) {
      const double d = t_(m_, j);
      if (d < most_negative) {
        best = j;
        if (bland) break;
        most_negative = d;
      }
    }
    return best;
  }

  std::size_t leaving(std::size_t enter) const {
    std::size_t best = npos;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m_; ++i) {
      const double coef = t_(i, enter);
      if (coef <= kPivotTol) continue;
      const double ratio = t_(i, width_ - 1) / coef;
      const double eps = 1e-12 * std::max(1.0, std::abs(ratio));
      if (best == npos || ratio < best_ratio - eps) {
        best = i;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + eps && basis_[i] < basis_[best]) {
        best = i;
      }
    }
    return best;
  }

  void pivot(std::size_t r, std::size_t col) {
    const double p = t_(r, col);
    if (std::abs(p) < kPivotTol) throw SolverFailure("simplex: vanishing pivot");
    auto pivot_row = t_.row(r);
    for (double& v : pivot_row) v /= p;
    pivot_row[col] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r) continue;
      const double factor = t_(i, col);
      if (factor == 0.0) continue;
      auto target = t_.row(i);
      for (std::size_t j = 0; j < width_; ++j) target[j] -= factor * pivot_row[j];
      target[col] = 0.0;
      if (std::abs(target[width_ - 1]) > kGrowthLimit) {
        throw SolverFailure("simplex: tableau growth exceeds the conditioning limit");
      }
    }
    // Clean tiny negative right-hand sides produced by cancellation.
    for (std::size_t i = 0; i < m_; ++i) {
      if (t_(i, width_ - 1) < 0.0 && t_(i, width_ - 1) > -kOptimalityTol) t_(i, width_ - 1) = 0.0;
    }
    basis_[r] = col;
  }

  std::size_t m_;
  std::size_t n_;
  std::size_t width_;
  DenseMatrix t_;
  std::vector<std::size_t> basis_;
};

}  // namespace

SimplexSolution maximize(const DenseMatrix& a, std::span<const double> b, std::span<const double> c) {
  if (b.size() != a.rows() || c.size() != a.cols()) {
    throw std::invalid_argument("simplex: dimension mismatch");
  }
  for (double v : b) {
    if (!(v >= 0.0)) throw std::invalid_argument("simplex: right-hand side must be nonnegative");
  }
  return Tableau(a, b, c).run();
}

}  // namespace leggett
