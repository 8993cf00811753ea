#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace leggett {

/// Numerical breakdown of the LP solver. Distinct from an infeasibility
/// verdict: nothing is claimed about the problem when this is thrown.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major dense matrix.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct SimplexSolution {
  std::vector<double> x;
  /// Optimal multipliers of the rows of A (all >= 0).
  std::vector<double> duals;
  double objective = 0.0;
  std::size_t pivots = 0;
};

/// Maximizes cᵀx subject to Ax <= b, x >= 0, for b >= 0 so that the origin
/// is a feasible start. Entering column: most negative reduced cost, lowest
/// index on ties; after a run of degenerate pivots it falls back to the
/// lowest-index improving column until progress resumes. Leaving row: minimum
/// ratio, lowest basic index on ties.
///
/// Throws std::invalid_argument on shape errors or a negative b, and
/// SolverFailure on an unbounded problem, a vanishing pivot, growth of the
/// tableau entries past 1e10, or the iteration limit.
SimplexSolution maximize(const DenseMatrix& a, std::span<const double> b, std::span<const double> c);

}  // namespace leggett
