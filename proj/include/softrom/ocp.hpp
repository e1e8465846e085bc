#pragma once

// Reduced-order constrained optimal control: QP transcription over frozen
// pieces, sequential convex programming with a state trust region, and
// receding-horizon chaining.

#include "softrom/qp.hpp"
#include "softrom/tpwl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace softrom {

/// { v | H v <= b }
struct Polytope {
  Mat H;
  Vec b;

  /// Axis-aligned box; infinite bounds produce no row.
  static Polytope box(const Vec& lower, const Vec& upper);
  int rows() const { return static_cast<int>(b.size()); }
  bool contains(const Vec& v, double tol = 0.0) const;
  /// Rows beyond b, elementwise max(0, H v - b).
  Vec violation(const Vec& v) const;
  /// Recovers [lower, upper] if every row is +-e_i, otherwise nullopt.
  std::optional<std::pair<Vec, Vec>> as_box(int dim) const;
  /// Euclidean projection onto the set.
  Vec project(const Vec& v) const;
  /// Throws unless a strictly feasible point exists.
  void check_nonempty(int dim) const;
};

struct OcpSpec {
  int T = 5;     // horizon steps
  int T_r = 2;   // replan interval
  double h = 0.05;
  Mat Q;    // o x o, PSD
  Mat Q_f;  // o x o, PSD
  Mat R;    // m x m, PD
  Polytope input_set;
  Polytope performance_set;  // may have zero rows
  double slack_penalty = 1e4;

  void validate(int o, int m) const;
};

/// Sampled targets over one window: z_d at knots 0..T, u_d at 0..T-1.
struct OcpTargets {
  Mat z_d;  // o x (T + 1)
  Mat u_d;  // m x T
};

struct ScpConfig {
  int max_iters = 10;
  double tol = 1e-4;          // max trajectory change, reduced units
  double rho_init = 10.0;
  double rho_min = 1e-6;
  double rho_max = 1e3;
  double shrink = 0.5;
  double grow = 2.0;
  double accept_ratio = 0.1;
  double grow_ratio = 0.9;
  QpSettings qp;
};

struct Trajectory {
  Mat x;  // n x (T + 1)
  Mat u;  // m x T
};

enum class OcpStatus { Converged, MaxIterations, Degraded, SolverFailure };

const char* to_string(OcpStatus status);

struct OcpSolution {
  Mat x_star;  // n x (T + 1)
  Mat u_star;  // m x T
  double objective = 0.0;
  int scp_iterations = 0;
  std::vector<double> qp_times;  // seconds, one entry per QP solved
  std::vector<int> pieces;       // pieces active along x_star (0..T-1)
  OcpStatus status = OcpStatus::SolverFailure;
  double final_trust_radius = 0.0;

  double cumulative_qp_time() const;
  bool usable() const { return status != OcpStatus::SolverFailure; }
};

/// Decision vector layout of the full transcription: [x_0..x_T, u_0..u_{T-1}, s_1..s_T].
struct QpLayout {
  int n = 0;
  int m = 0;
  int n_z = 0;
  int T = 0;

  int x_index(int k) const { return k * n; }
  int u_index(int k) const { return (T + 1) * n + k * m; }
  int s_index(int k) const { return (T + 1) * n + T * m + (k - 1) * n_z; }
  int size() const { return (T + 1) * n + T * m + T * n_z; }
};

/// Pieces frozen along a reference trajectory (nearest piece of x_ref_k, k < T).
std::vector<int> frozen_pieces(const TpwlModel& model, const Mat& x_ref);

/// Full sparse-structure transcription (states, inputs and slacks as variables).
/// A non-finite rho drops the trust-region rows.
QpProblem transcribe_qp(const OcpSpec& spec, const TpwlModel& model, const Vec& x0, const OcpTargets& targets,
                        const Trajectory& reference, double rho, QpLayout* layout = nullptr);

/// Same problem with the states eliminated through the frozen dynamics.
/// Variables: [u_0..u_{T-1}, s_1..s_T].
struct CondensedQp {
  QpProblem problem;
  std::vector<Mat> state_gain;  // x_k = state_gain[k] * u + free_response[k]
  std::vector<Vec> free_response;
  int inputs = 0;  // m T
};
CondensedQp transcribe_condensed_qp(const OcpSpec& spec, const TpwlModel& model, const Vec& x0,
                                    const OcpTargets& targets, const Trajectory& reference, double rho);

/// Rollout of the piecewise-affine discrete model.
Mat rollout(const TpwlModel& model, const Vec& x0, const Mat& u);

/// Tracking cost plus the L1 penalty on performance-constraint violations
/// at knots 1..T.
double ocp_cost(const OcpSpec& spec, const TpwlModel& model, const OcpTargets& targets, const Mat& x, const Mat& u);

/// Sequential convex programming: repeated condensed QPs over pieces frozen
/// along the current iterate, accepted when the true (piecewise, softened)
/// cost decreases enough relative to the QP's prediction. The returned
/// trajectory is always a rollout of the true model, so its dynamics are
/// self-consistent.
OcpSolution scp_solve(const OcpSpec& spec, const TpwlModel& model, const Vec& x0, const OcpTargets& targets,
                      const std::optional<Mat>& warm_inputs = std::nullopt, const ScpConfig& config = {});

struct RecedingStart {
  Vec x0;
  std::optional<Mat> warm_inputs;
};

/// Initial condition for the next window: x*_{T_r} of the previous solution
/// and its inputs shifted by T_r (last input held); x_hat0 when there is none.
RecedingStart receding_horizon_init(const OcpSolution* previous, int T_r, const Vec& x_hat0);

}  // namespace softrom
