#pragma once

// Piecewise-affine (trajectory piecewise-linear) reduced-order model.
//
// Reduced state x = [v; q] with n = 2r. Each piece i is the affine model
//   x' = A_i x + B_i u + d_i
// obtained by Taylor-expanding the Galerkin-projected dynamics around a stored
// full-order state, together with its zero-order-hold discretization at the
// model sampling time h. Pieces are selected by the W-weighted nearest stored
// linearization point.

#include "softrom/mor.hpp"
#include "softrom/plant.hpp"

#include <Eigen/Cholesky>

#include <cstdint>
#include <vector>

namespace softrom {

struct DiscreteAffine {
  Mat A;
  Mat B;
  Vec d;
};

struct AffinePiece {
  Vec x;    // linearization point [v_i; q_i] in reduced coordinates
  Vec q_f;  // full-order representative
  Vec v_f;
  Mat A;  // continuous
  Mat B;
  Vec d;
  DiscreteAffine discrete;  // at TpwlModel::h
  Mat G;  // m x n feedback gain, empty until a gain schedule is attached
};

struct TpwlModel {
  ReducedBasis basis;
  std::vector<AffinePiece> pieces;
  Mat W;  // n x n PSD nearest-point weight
  double h = 0.05;

  Mat M;  // reduced mass U^T M^f U
  Vec P;  // reduced constant force U^T P^f
  Vec v_bar;  // U^T v_bar^f

  Mat C_y;  // reduced output maps, y = C_y x + y_ref
  Vec y_ref;
  Mat C_z;
  Vec z_ref;

  int r() const { return basis.r(); }
  int n() const { return 2 * basis.r(); }
  int m() const { return pieces.empty() ? 0 : static_cast<int>(pieces.front().B.cols()); }

  /// Rebuilds the cached factor of W; call after changing W or pieces.
  void refresh_metric();

  /// Same pieces with discrete matrices recomputed at sampling time `h_new`.
  TpwlModel rediscretized(double h_new) const;

  /// Throws if dimensions or metric are inconsistent.
  void validate() const;

  // W = L^T L, and L x_j for every piece.
  Mat metric_factor;
  Mat metric_points;
};

/// Reduced operators shared by every piece of one basis.
class PieceLinearizer {
 public:
  PieceLinearizer(const PlantModel& plant, const ReducedBasis& basis);

  /// Continuous affine piece at the full-order state (q_f, v_f). The damping
  /// matrix is frozen at q_f; its q-derivative is not included.
  AffinePiece linearize_at(const Vec& q_f, const Vec& v_f) const;

  /// Empty model carrying the reduced operators, output maps and metric.
  TpwlModel empty_model(const Mat& W, double h) const;

  /// M^-1 U^T (P - F(q_f, v_f) + H(q_f) u) stacked over U^T v_f: the projected
  /// full-order vector field in reduced coordinates.
  Vec projected_vector_field(const Vec& q_f, const Vec& v_f, const Vec& u) const;

  const Mat& reduced_mass() const { return M_; }

 private:
  const PlantModel* plant_;
  const ReducedBasis* basis_;
  Mat M_;
  Eigen::LLT<Mat> M_llt_;
  Vec P_;
  Vec v_bar_;
};

/// Exact zero-order hold of x' = A x + B u + d over h via the matrix
/// exponential of the augmented generator [[A, B, d], [0, 0, 0]].
DiscreteAffine discretize_piece(const Mat& A, const Mat& B, const Vec& d, double h);

/// argmin_j |x - x_j|_W, ties resolved to the lowest index.
int nearest_piece(const Vec& x, const TpwlModel& model);

/// g(x, u) = A_i,d x + B_i,d u + d_i,d with i = nearest_piece(x).
Vec rom_step(const Vec& x, const Vec& u, const TpwlModel& model);

/// Continuous piece i vector field.
Vec piece_vector_field(const AffinePiece& piece, const Vec& x, const Vec& u);

/// Appends a linearized, discretized piece and refreshes the metric cache.
void add_piece(TpwlModel& model, AffinePiece piece);

/// W = blkdiag(w_v I, w_q I) on the [v; q] ordering.
Mat block_weight(int r, double w_v, double w_q);

struct RomBuildConfig {
  double eta = 1.0;   // divergence threshold, reduced units
  Mat W_q;            // r x r
  Mat W_v;            // r x r
  double h = 0.05;    // ROM sampling time, s
  Mat W;              // runtime nearest-point weight (n x n)
  bool free_running = false;  // ROM advances from its own prediction instead of the projected plant state
};

struct RomBuildLog {
  std::vector<double> errors;   // divergence metric at each ROM step
  std::vector<bool> inserted;   // whether a point was added at that step
  std::vector<int> pieces_before;  // model size used for the prediction at that step
};

/// Second pass of the offline build: walks the sampled plant trajectory
/// (states at multiples of h, controls held over each interval) and inserts
/// the state x_k as a new linearization point whenever the one-step ROM
/// prediction of x_{k+1} diverges by more than eta in the W_q/W_v metric.
/// The first piece is always the trajectory's initial state.
TpwlModel select_linearization_points(const PlantModel& plant, const ReducedBasis& basis,
                                      const std::vector<FullState>& trajectory, const Mat& controls,
                                      const RomBuildConfig& config, RomBuildLog* log = nullptr);

/// Single-piece model linearized at the basis reference state.
TpwlModel linearized_model(const PlantModel& plant, const ReducedBasis& basis, const Mat& W, double h);

}  // namespace softrom
