#include "collisim/lcp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace collisim {

void LcpProblem::validate() const {
  if (M.rows() < 1 || M.rows() != M.cols())
    throw std::invalid_argument("LcpProblem: M must be square with n >= 1");
  if (q.size() != M.rows())
    throw std::invalid_argument("LcpProblem: q length must match M");
  if (!M.allFinite() || !q.allFinite())
    throw std::invalid_argument("LcpProblem: non-finite entries");
}

double solve_lcp_scalar(const LcpProblem& problem) {
  problem.validate();
  if (problem.M.rows() != 1)
    throw std::invalid_argument("solve_lcp_scalar: problem is not scalar");
  const double M = problem.M(0, 0);
  if (!(M > 0)) throw std::invalid_argument("solve_lcp_scalar: M must be > 0");
  return std::max(0.0, -problem.q(0) / M);
}

// Tableau layout: [ I | -M | -d | q ] with basic slack variables w_0..w_{n-1},
// complementary variables z_0..z_{n-1} in columns n..2n-1, and the artificial
// z0 driven by the covering vector d = 1.
LcpResult solve_lcp_lemke(const LcpProblem& problem, int max_pivots) {
  problem.validate();
  const int n = static_cast<int>(problem.M.rows());

  LcpResult result;
  result.z = Eigen::VectorXd::Zero(n);

  // Trivial solution: q >= 0 means z = 0 works.
  if ((problem.q.array() >= 0).all()) return result;

  Eigen::MatrixXd tab(n, 2 * n + 2);
  tab.block(0, 0, n, n) = Eigen::MatrixXd::Identity(n, n);
  tab.block(0, n, n, n) = -problem.M;
  tab.col(2 * n).setConstant(-1.0);
  tab.col(2 * n + 1) = problem.q;
  const int q_col = 2 * n + 1;
  const int z0_col = 2 * n;

  // basis[i] = column index of the variable basic in row i
  Eigen::VectorXi basis = Eigen::VectorXi::LinSpaced(n, 0, n - 1);

  auto pivot = [&](int row, int col) {
    tab.row(row) /= tab(row, col);
    for (int i = 0; i < n; ++i) {
      if (i != row && tab(i, col) != 0.0) tab.row(i) -= tab(i, col) * tab.row(row);
    }
    ++result.pivots;
  };

  // First pivot: bring z0 in on the row with the most negative q.
  int row;
  problem.q.minCoeff(&row);
  pivot(row, z0_col);
  basis(row) = z0_col;
  int entering = row + n;  // complement of the slack that just left

  const double kPivTol = 1e-11;
  while (result.pivots < max_pivots) {
    // Minimum-ratio test over rows with positive pivot column entries.
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double a = tab(i, entering);
      if (a > kPivTol) {
        const double ratio = tab(i, q_col) / a;
        // prefer driving z0 out when it ties, which terminates the scheme
        if (ratio < best - 1e-12 ||
            (ratio < best + 1e-12 && basis(i) == z0_col)) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave < 0) {
      result.status = LcpStatus::RayTermination;
      return result;
    }

    const int leaving_var = basis(leave);
    pivot(leave, entering);
    basis(leave) = entering;
    // numerical cleanup: q column must stay nonnegative
    tab.col(q_col) = tab.col(q_col).cwiseMax(0.0);

    if (leaving_var == z0_col) break;  // z0 left the basis: solution found
    entering = leaving_var < n ? leaving_var + n : leaving_var - n;
  }

  if (result.pivots >= max_pivots) {
    bool z0_basic = false;
    for (int i = 0; i < n; ++i) z0_basic |= basis(i) == z0_col;
    if (z0_basic) {
      result.status = LcpStatus::PivotLimit;
      return result;
    }
  }

  for (int i = 0; i < n; ++i) {
    if (basis(i) >= n && basis(i) < 2 * n) result.z(basis(i) - n) = tab(i, q_col);
  }
  return result;
}

}  // namespace collisim
