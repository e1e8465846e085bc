#pragma once

// Dense convex QP solver (primal-dual interior point, Mehrotra predictor-corrector).
//
//   minimize    1/2 x^T P x + q^T x
//   subject to  A x  = b
//               G x <= h

#include <Eigen/Core>

#include <string>

namespace softrom {

struct QpProblem {
  Eigen::MatrixXd P;
  Eigen::VectorXd q;
  Eigen::MatrixXd A;  // may have zero rows
  Eigen::VectorXd b;
  Eigen::MatrixXd G;  // may have zero rows
  Eigen::VectorXd h;

  int variables() const { return static_cast<int>(q.size()); }
  int equalities() const { return static_cast<int>(b.size()); }
  int inequalities() const { return static_cast<int>(h.size()); }
  void validate() const;
};

struct QpSettings {
  double tolerance = 1e-9;
  int max_iterations = 100;
};

enum class QpStatus { Solved, MaxIterations, NumericalFailure };

const char* to_string(QpStatus status);

struct KktResiduals {
  double stationarity = 0.0;
  double primal = 0.0;
  double complementarity = 0.0;

  double max() const;
};

struct QpSolution {
  Eigen::VectorXd x;
  Eigen::VectorXd y;  // equality multipliers
  Eigen::VectorXd z;  // inequality multipliers, >= 0
  QpStatus status = QpStatus::NumericalFailure;
  int iterations = 0;
  double objective = 0.0;
  KktResiduals residuals;
};

QpSolution solve_qp(const QpProblem& problem, const QpSettings& settings = {});

/// Residuals scaled by (1 + largest data magnitude) of the respective block:
/// stationarity |Px + q + A^T y + G^T z|, primal max(|Ax - b|, (Gx - h)+),
/// complementarity max |z_i (h - Gx)_i| plus any negative multiplier.
KktResiduals kkt_residuals(const QpProblem& problem, const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                           const Eigen::VectorXd& z);

}  // namespace softrom
