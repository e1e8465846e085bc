#pragma once

// Snapshot collection and proper orthogonal decomposition.

#include "softrom/plant.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace softrom {

enum class SnapshotKind { Position, Velocity, Acceleration };

const char* to_string(SnapshotKind kind);
SnapshotKind snapshot_kind_from_string(const std::string& name);

struct SnapshotSet {
  SnapshotKind kind = SnapshotKind::Acceleration;
  Mat columns;  // 3N x count, centered on the reference state
  Vec reference_q;
  Vec reference_v;
};

struct ReducedBasis {
  Mat U;  // 3N x r, orthonormal columns
  Vec singular_values;  // full spectrum, descending
  Vec reference_q;
  Vec reference_v;

  int r() const { return static_cast<int>(U.cols()); }
  int full_dim() const { return static_cast<int>(U.rows()); }
};

/// Latin hypercube excitation. Returns an m x steps matrix: ceil(steps / hold)
/// samples, each stratified per coordinate over [lower, upper] and held for
/// `hold_steps` consecutive columns.
Mat latin_hypercube_controls(int steps, const Vec& lower, const Vec& upper, int hold_steps, std::uint64_t seed);

/// The raw samples behind latin_hypercube_controls, one per column.
Mat latin_hypercube_samples(int count, const Vec& lower, const Vec& upper, std::uint64_t seed);

struct SnapshotRequest {
  int stride = 1;
  std::vector<SnapshotKind> kinds{SnapshotKind::Acceleration};
  int record_every = 0;  // > 0 also keeps every record_every-th full state
};

struct SnapshotCollection {
  std::vector<SnapshotSet> sets;      // one per requested kind, same order
  std::vector<FullState> trajectory;  // states at steps 0, record_every, ...
  int steps_completed = 0;

  const SnapshotSet& get(SnapshotKind kind) const;
};

/// Simulates the plant from `initial` under `controls` (m x T_sim) and stores
/// centered snapshots every `stride` steps: positions and velocities at steps
/// 0, stride, ..., T_sim and velocity increments v_{k+1} - v_k at steps
/// 0, stride, ... < T_sim. The reference state is `reference`.
SnapshotCollection collect_snapshots(const PlantModel& plant, const FullState& initial, const FullState& reference,
                                     const Mat& controls, const SnapshotRequest& request);

/// Leading r left singular vectors of the snapshot matrix.
ReducedBasis pod_basis(const SnapshotSet& snapshots, int r);

/// Smallest r whose retained energy fraction reaches `threshold`.
int energy_dimension(const Vec& singular_values, double threshold);

/// Cumulative energy fractions, entry i covering the first i + 1 values.
Vec energy_fractions(const Vec& singular_values);

struct ReducedPair {
  Vec q;
  Vec v;
};

ReducedPair project_state(const Vec& q_f, const Vec& v_f, const ReducedBasis& basis);
FullState reconstruct_state(const Vec& q, const Vec& v, const ReducedBasis& basis);

/// Reduced combined state [v; q].
Vec project_combined(const FullState& state, const ReducedBasis& basis);

}  // namespace softrom
