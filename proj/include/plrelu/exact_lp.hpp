#pragma once

#include "plrelu/geometry.hpp"

#include <optional>
#include <vector>

namespace plrelu::detail {

/// Dense two-phase simplex over the rationals with Bland's rule.
///
/// Maximizes c.x subject to a x = b, x >= 0. Returns nullopt when infeasible.
/// Only used on tiny systems (mesh conformity), so no attempt at sparsity.
class ExactLp {
public:
  enum class Status { optimal, infeasible, unbounded };

  struct Result {
    Status status;
    Scalar value;
    std::vector<Scalar> x;
  };

  static Result maximize(const Matrix& a, const std::vector<Scalar>& b, const std::vector<Scalar>& c) {
    const std::size_t rows = a.size();
    const std::size_t cols = c.size();
    // columns: [x (cols) | artificials (rows) | rhs]
    const std::size_t width = cols + rows + 1;
    Matrix t(rows, std::vector<Scalar>(width));
    std::vector<std::size_t> basis(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      const bool flip = sign(b[r]) < 0;
      for (std::size_t j = 0; j < cols; ++j) t[r][j] = flip ? Scalar(-a[r][j]) : a[r][j];
      t[r][cols + r] = 1;
      t[r][width - 1] = flip ? Scalar(-b[r]) : b[r];
      basis[r] = cols + r;
    }

    // phase 1: maximize -sum(artificials)
    std::vector<Scalar> phase1(width - 1, Scalar(0));
    for (std::size_t r = 0; r < rows; ++r) phase1[cols + r] = -1;
    if (run(t, basis, phase1, width - 1) != Status::optimal) return {Status::infeasible, 0, {}};
    if (objective(t, basis, phase1) != 0) return {Status::infeasible, 0, {}};

    // drive remaining artificials out of the basis where possible
    for (std::size_t r = 0; r < rows; ++r) {
      if (basis[r] < cols) continue;
      for (std::size_t j = 0; j < cols; ++j) {
        if (t[r][j] != 0) {
          pivot(t, basis, r, j);
          break;
        }
      }
    }

    // phase 2 restricted to structural columns; artificials stuck in the
    // basis sit on redundant rows and stay at zero
    std::vector<Scalar> phase2(width - 1, Scalar(0));
    for (std::size_t j = 0; j < cols; ++j) phase2[j] = c[j];
    auto status = run(t, basis, phase2, cols);
    if (status != Status::optimal) return {status, 0, {}};

    std::vector<Scalar> x(cols, Scalar(0));
    for (std::size_t r = 0; r < rows; ++r)
      if (basis[r] < cols) x[basis[r]] = t[r][width - 1];
    return {Status::optimal, objective(t, basis, phase2), std::move(x)};
  }

private:
  static Scalar objective(const Matrix& t, const std::vector<std::size_t>& basis, const std::vector<Scalar>& c) {
    Scalar v = 0;
    for (std::size_t r = 0; r < t.size(); ++r) v += c[basis[r]] * t[r].back();
    return v;
  }

  static void pivot(Matrix& t, std::vector<std::size_t>& basis, std::size_t row, std::size_t col) {
    const Scalar p = t[row][col];
    for (auto& v : t[row]) v /= p;
    for (std::size_t r = 0; r < t.size(); ++r) {
      if (r == row || t[r][col] == 0) continue;
      const Scalar f = t[r][col];
      for (std::size_t j = 0; j < t[r].size(); ++j) t[r][j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  /// Primal simplex; entering candidates restricted to columns < allowed.
  static Status run(Matrix& t, std::vector<std::size_t>& basis, const std::vector<Scalar>& c, std::size_t allowed) {
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < allowed && !entering; ++j) {
        if (std::find(basis.begin(), basis.end(), j) != basis.end()) continue;
        Scalar reduced = c[j];
        for (std::size_t r = 0; r < t.size(); ++r) reduced -= c[basis[r]] * t[r][j];
        if (sign(reduced) > 0) entering = j;
      }
      if (!entering) return Status::optimal;

      std::optional<std::size_t> leaving;
      Scalar best_ratio;
      for (std::size_t r = 0; r < t.size(); ++r) {
        if (sign(t[r][*entering]) <= 0) continue;
        Scalar ratio = t[r].back() / t[r][*entering];
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis[r] < basis[*leaving])) {
          leaving = r;
          best_ratio = ratio;
        }
      }
      if (!leaving) return Status::unbounded;
      pivot(t, basis, *leaving, *entering);
    }
  }
};

} // namespace plrelu::detail
