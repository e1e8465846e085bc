#pragma once

// Synthetic high-dimensional soft-body plant: a geometrically nonlinear elastic
// truss with Rayleigh damping, lumped masses, gravity and point-tension cables.
//
//   M v' = P - F(q, v) + H(q) u,   q' = v
//
// All full-order vectors are node-major: entries [3i, 3i+1, 3i+2] belong to
// node i. Output maps act on the stacked state [v; q].

#include <Eigen/Core>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>

#include <cstdint>
#include <random>
#include <vector>

namespace softrom {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;
using Vec3 = Eigen::Vector3d;

struct Edge {
  int a = 0;
  int b = 0;
  double rest_length = 0.0;  // m
  double stiffness = 0.0;    // N/m
};

struct MeshTopology {
  int node_count = 0;
  Vec rest_positions;  // 3N, m
  std::vector<Edge> edges;
  std::vector<int> fixed_nodes;
  Vec lumped_masses;  // N, kg

  int dofs() const { return 3 * node_count; }
  std::vector<bool> fixed_mask() const;
  void validate() const;
};

struct Cable {
  int node = 0;
  Vec3 anchor = Vec3::Zero();
};

struct CableSpec {
  std::vector<Cable> cables;

  int actuator_count() const { return static_cast<int>(cables.size()); }
  void validate(const MeshTopology& topo) const;
};

struct PlantParams {
  Vec3 gravity{0.0, 0.0, -9.81};
  double rayleigh_alpha = 0.5;   // 1/s
  double rayleigh_beta = 0.01;   // s
  double dt_plant = 1e-3;        // s
  double noise_std_position = 1e-4;  // m
  double noise_std_velocity = 1e-3;  // m/s

  void validate() const;
};

struct FullState {
  Vec q;
  Vec v;

  // [v; q]
  Vec stacked() const;
};

struct OutputMaps {
  SpMat C_y;  // p x 6N
  SpMat C_z;  // o x 6N
  Vec noise_std;  // p, per measurement channel
};

struct ForceJacobians {
  SpMat dF_dq;
  SpMat dF_dv;
};

/// Internal force F(q, v): nonlinear springs plus Rayleigh damping
/// (alpha M + beta K(q)) v. Rows of fixed nodes are zero.
Vec internal_force(const Vec& q, const Vec& v, const MeshTopology& topo, const PlantParams& params);

/// Elastic energy sum_e k/2 (|d_e| - L_e)^2.
double elastic_energy(const Vec& q, const MeshTopology& topo);

/// Analytic Jacobians of internal_force. Fixed-node rows and columns are zero.
ForceJacobians force_jacobians(const Vec& q, const Vec& v, const MeshTopology& topo,
                               const PlantParams& params);

/// Stiffness of the elastic part only (symmetric), fixed rows/cols zeroed.
SpMat elastic_stiffness(const Vec& q, const MeshTopology& topo);

/// Input matrix: column j holds the unit vector from cable j's node toward its anchor.
Mat input_matrix(const Vec& q, const CableSpec& cables, int node_count);

/// Constant external force (gravity on free nodes).
Vec external_force(const MeshTopology& topo, const PlantParams& params);

/// Lumped mass diagonal expanded to 3N.
Vec mass_diagonal(const MeshTopology& topo);

/// Bundles everything that defines the plant.
struct PlantModel {
  MeshTopology topology;
  CableSpec cables;
  PlantParams params;
  OutputMaps outputs;
  int end_effector = 0;
  std::vector<int> elbows;

  int dofs() const { return topology.dofs(); }
  int inputs() const { return cables.actuator_count(); }
  FullState rest_state() const;
  void validate() const;
};

/// Output maps from plant.end_effector and plant.elbows: y stacks position then
/// velocity of the end effector and each elbow (noise from params), z is the
/// end-effector position.
void attach_standard_outputs(PlantModel& plant);

/// Generator for the default "diamond" lattice: stacked k x k square layers
/// whose width swells toward mid-height, base layer fixed, four cables pulling
/// the mid-height side nodes toward anchors below them. The default
/// 3 x 3 x 34 lattice has 306 nodes (918 dofs).
struct DiamondGeometry {
  int layers = 34;
  int grid = 3;  // nodes per side, odd
  double height = 0.2;            // m
  double max_half_width = 0.05;   // m
  double min_half_width = 0.015;  // m
  double stiffness_scale = 80.0;  // N; edge stiffness = scale / rest_length
  double total_mass = 0.1;        // kg
  // Each cable leaves its elbow toward the guide point (anchor_radius times the
  // elbow's radial position, at anchor_height) and is anchored cable_length
  // metres along that line. Long cables keep the pulling direction nearly
  // constant as the elbow moves.
  double anchor_radius = 1.4;
  double anchor_height = 0.0;     // m
  double cable_length = 1.0;      // m
};

PlantModel make_diamond(const DiamondGeometry& geometry, const PlantParams& params);

/// One semi-implicit step of size params.dt_plant:
///   (M + dt D + dt^2 K) dv = dt (P - F + H u - dt K v),  q+ = q + dt v+
/// with D = dF/dv and K the elastic stiffness at the current state. The
/// iteration matrix is symmetric, so it is factorized with a sparse LDLT whose
/// symbolic analysis and assembly map are built once per Stepper.
class Stepper {
 public:
  explicit Stepper(const PlantModel& plant);

  FullState step(const FullState& state, const Vec& u);

  const PlantModel& plant() const { return *plant_; }

 private:
  void assemble(const Vec& q);

  const PlantModel* plant_;
  Vec mass_;
  Vec gravity_force_;
  std::vector<bool> fixed_dof_;
  SpMat system_;     // M + dt D + dt^2 K (values refreshed each step)
  SpMat stiffness_;  // K (same pattern as system_)
  std::vector<int> edge_slots_;  // 36 value indices per edge, -1 when the block touches a fixed node
  std::vector<int> diag_slots_;
  Eigen::SimplicialLDLT<SpMat> solver_;
};

/// Stateless convenience wrapper around Stepper.
FullState step_full(const FullState& state, const Vec& u, const PlantModel& plant);

/// y = C_y [v; q] + noise.
Vec measure(const FullState& state, const OutputMaps& maps, std::mt19937_64& rng);
Vec measure(const FullState& state, const OutputMaps& maps, const Vec& noise_std, std::uint64_t rng_seed);

/// z = C_z [v; q].
Vec performance(const FullState& state, const OutputMaps& maps);

/// Newton solve of P - F(q, 0) + H(q) u = 0 over the free nodes.
FullState static_equilibrium(const PlantModel& plant, const Vec& u, double tol = 1e-9,
                             int max_iters = 100);

/// Infinity norm of the static residual over free nodes.
double static_residual(const PlantModel& plant, const Vec& q, const Vec& u);

}  // namespace softrom
