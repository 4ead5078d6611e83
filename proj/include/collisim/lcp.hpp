#pragma once

#include <Eigen/Dense>

namespace collisim {

// Linear complementarity problem: find z >= 0 with w = M z + q >= 0 and
// z . w = 0. The contact model needs only the scalar case (n = 1); the
// Lemke solver handles general n and doubles as a cross-check.
struct LcpProblem {
  Eigen::MatrixXd M;
  Eigen::VectorXd q;

  void validate() const;  // square M, matching q, n >= 1
};

enum class LcpStatus { Solved, RayTermination, PivotLimit };

struct LcpResult {
  LcpStatus status{LcpStatus::Solved};
  Eigen::VectorXd z;
  int pivots{0};
};

// Closed form for n = 1 with M > 0: z = max(0, -q/M). Complementarity holds
// exactly. Throws std::invalid_argument when M <= 0 or the problem is not
// scalar.
double solve_lcp_scalar(const LcpProblem& problem);

// Lemke's complementary pivoting with a unit covering vector.
LcpResult solve_lcp_lemke(const LcpProblem& problem, int max_pivots = 1000);

}  // namespace collisim
