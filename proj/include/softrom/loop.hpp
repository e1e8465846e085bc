#pragma once

// Closed-loop pieces: reduced-order EKF, per-piece discrete LQR gains, plan
// interpolation and the two-rate receding-horizon loop around the plant.

#include "softrom/ocp.hpp"
#include "softrom/plant.hpp"
#include "softrom/tpwl.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace softrom {

struct EstimatorState {
  Vec x_hat;
  Mat P_cov;
  Mat Q_e;  // process noise, n x n
  Mat R_e;  // measurement noise, p x p
  double innovation_norm = 0.0;  // of the last correction
};

/// Prior at x_hat0 with covariance p0 * I.
EstimatorState make_estimator(const Vec& x_hat0, double p0, const Mat& Q_e, const Mat& R_e);

/// Predict with the piece nearest x_hat, then correct with y:
///   x- = g(x_hat, u_prev),  L = P- C^T (C P- C^T + R)^-1,
///   x+ = x- + L (y - C x- - y_ref),  P+ = (I - L C) P- (I - L C)^T + L R L^T.
/// `model` supplies the discrete pieces at the estimator rate and the reduced C_y, y_ref.
EstimatorState ekf_update(const EstimatorState& est, const Vec& u_prev, const Vec& y, const TpwlModel& model);

/// Measurement correction only (used at start-up).
EstimatorState ekf_correct(const EstimatorState& est, const Vec& y, const TpwlModel& model);

struct DareSolution {
  Mat P;
  Mat G;  // (R + B^T P B)^-1 B^T P A
  double residual = 0.0;  // relative, |A^T P A - P - A^T P B G + Q| / max(1, |P|)
  int iterations = 0;
};

/// Discrete algebraic Riccati equation by the structured doubling algorithm,
/// polished with a few fixed-point sweeps.
DareSolution solve_dare(const Mat& A, const Mat& B, const Mat& Q, const Mat& R, double tol = 1e-12,
                        int max_iters = 100);

/// Spectral radius of a square matrix.
double spectral_radius(const Mat& A);

struct GainSchedule {
  std::vector<Mat> gains;  // m x n, one per piece; G_i = -K_i so that u = u* + G_i (x_hat - x*)
  Mat Q_G;
  Mat R_G;
};

/// Per-piece LQR gains on the discrete pieces of `model`. Throws a Riccati
/// error naming the piece when the residual exceeds 1e-8 or the closed loop
/// is not Schur stable.
GainSchedule lqr_gains(const TpwlModel& model, const Mat& Q_G, const Mat& R_G);

/// Q_G = C_z^T Q C_z + reg * I.
Mat default_state_weight(const TpwlModel& model, const Mat& Q, double reg);

void attach_gains(TpwlModel& model, const GainSchedule& schedule);

struct FeedbackResult {
  Vec u;            // clipped into the input set
  Vec u_unclipped;  // u* + G (x_hat - x*)
  int piece = 0;    // scheduled on x*
};

/// u = u* + G_i (x_hat - x*) with i = nearest_piece(x*), projected onto `input_set`.
/// Pieces without a gain contribute no feedback.
FeedbackResult feedback_control(const Vec& x_hat, const Vec& x_plan, const Vec& u_plan, const TpwlModel& model,
                                const Polytope& input_set);

struct PlanPoint {
  Vec x;
  Vec u;
};

/// Plan evaluated at time t for a solution whose knot 0 sits at t0 with spacing h.
/// x* is linear between knots; u* is linear between u_k and u_{k+1} and held
/// after the last input. Throws a range error outside [t0, t0 + T h].
PlanPoint interpolate_plan(const OcpSolution& plan, double t0, double h, double t);

/// Shifts a plan by `steps` knots, holding the final state and input. Used when
/// a replacement plan is unavailable.
OcpSolution shift_plan(const OcpSolution& plan, int steps);

/// Reference signal: z_d(t) (o-vector) and u_d(t) (m-vector).
struct Target {
  std::function<Vec(double)> z_d;
  std::function<Vec(double)> u_d;
};

/// OCP targets sampled on the knots t0 + k h.
OcpTargets sample_targets(const Target& target, double t0, const OcpSpec& spec);

struct LoopConfig {
  double dt_ctrl = 0.01;
  double duration = 30.0;
  bool feedback = true;
  bool pipelined = false;        // run the next solve on a worker thread
  std::uint64_t noise_seed = 1;
  double initial_covariance = 1e-4;
  double process_noise = 1e-4;   // Q_e = process_noise * I
  ScpConfig scp;

  void validate(double h, double dt_plant) const;
};

struct WindowRecord {
  double start = 0.0;  // time at which the plan becomes active
  OcpStatus status = OcpStatus::SolverFailure;
  int scp_iterations = 0;
  std::vector<double> qp_times;  // s
  double solve_time = 0.0;       // s, wall time of the whole SCP call
  bool deadline_miss = false;
  bool held_previous = false;
  double objective = 0.0;
};

struct RunLog {
  std::vector<double> t;
  std::vector<Vec> z, z_hat, z_d, z_star;
  std::vector<Vec> u, u_star, u_unclipped;
  std::vector<Vec> x_hat, x_star;
  std::vector<Vec> y;
  std::vector<double> margin;      // max(H_z z - b_z); positive means violated
  std::vector<double> innovation;  // norm of the EKF innovation
  std::vector<int> piece;          // scheduled gain piece
  std::vector<WindowRecord> windows;
  bool aborted = false;
  std::string abort_reason;

  std::size_t steps() const { return t.size(); }
};

/// Everything the loop needs besides the plant.
struct ControllerSetup {
  const TpwlModel* model = nullptr;      // pieces at h, gains attached
  const TpwlModel* estimator = nullptr;  // same pieces discretized at dt_ctrl
  OcpSpec spec;
  Target target;
};

/// Two-rate receding-horizon loop. The plant runs at dt_plant, estimator and
/// feedback at dt_ctrl. The plan for window j + 1 (starting at (j + 1) T_r h)
/// is solved at the start of window j from x*_{T_r} of window j's plan; the
/// first plan is solved from the initial estimate. Results do not depend on
/// timing, so both execution modes produce identical logs.
RunLog run_closed_loop(const PlantModel& plant, const FullState& initial, const ControllerSetup& setup,
                       const LoopConfig& config);

}  // namespace softrom
