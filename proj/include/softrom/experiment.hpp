#pragma once

// Experiment harness: JSON configuration, the offline ROM build pipeline,
// closed-loop runs for both controllers, targets and benchmark metrics.

#include "softrom/io.hpp"
#include "softrom/loop.hpp"
#include "softrom/mor.hpp"
#include "softrom/ocp.hpp"
#include "softrom/tpwl.hpp"

#include <optional>
#include <string>
#include <vector>

namespace softrom {

struct PlantSection {
  DiamondGeometry geometry;
  PlantParams params;
  std::optional<Json> mesh;  // explicit mesh replaces the generator
};

struct RomSection {
  SnapshotKind kind = SnapshotKind::Acceleration;
  int r = 21;                      // 0 selects r by energy_threshold
  double energy_threshold = 0.999;
  int r_max = 30;
  double eta = 0.5;
  int T_sim = 20000;               // plant steps
  int hold_steps = 50;             // plant steps per excitation sample
  int stride = 1;
  std::uint64_t seed = 7;
  Vec u_min;                       // m
  Vec u_max;
  double build_w_q = 0.0;          // W_q = build_w_q I
  double build_w_v = 1.0;          // W_v = build_w_v I
  double metric_w_v = 0.0;         // runtime W = blkdiag(metric_w_v I, metric_w_q I)
  double metric_w_q = 1.0;
  bool free_running = false;
  double lqr_state_reg = 1e-6;     // Q_G = C_z^T Q C_z + reg I
  double lqr_input_scale = 1.0;    // R_G = lqr_input_scale * R
};

struct TaskSection {
  std::string name = "figure8";
  Vec center;     // o, offset from the equilibrium output
  Vec amplitude;  // o
  double period = 6.0;
  std::vector<int> channels{0, 1};  // tracked outputs (MSE, nonzero Q)
};

struct ExperimentConfig {
  PlantSection plant;
  RomSection rom;
  OcpSpec ocp;                     // performance_set is relative to the equilibrium output
  bool default_performance_set = true;  // false once the config names one (null means none)
  LoopConfig loop;
  TaskSection task;
  std::string output_dir = "out";
  std::string hash;                // of the canonical JSON
  Json raw;
};

/// Parses and validates a configuration. Unknown keys are rejected.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::string& path);

PlantModel build_plant(const ExperimentConfig& config);

/// OCP with the performance set shifted to absolute output units.
OcpSpec resolve_ocp(const ExperimentConfig& config, const Vec& z_equilibrium);

/// Target trajectory around the equilibrium output. Built-ins: setpoint,
/// circle, figure8 (planar in the first two tracked channels).
Target make_target(const TaskSection& task, const Vec& z_equilibrium, int m);

struct BuildResult {
  TpwlModel model;
  RomBuildLog log;
  FullState reference;
  std::vector<FullState> trajectory;  // training states every h
  Mat controls;                       // per h interval
  Json report;
};

/// Excitation, snapshots, POD, linearization-point selection and LQR gains.
BuildResult build_rom(const ExperimentConfig& config, const PlantModel& plant);

enum class Controller { TpwlScp, LinearRompc };
Controller controller_from_string(const std::string& name);
const char* to_string(Controller c);

/// Model (with gains) used by the requested controller.
TpwlModel controller_model(const ExperimentConfig& config, const PlantModel& plant, const TpwlModel& tpwl,
                           Controller controller);

RunLog run_experiment(const ExperimentConfig& config, const PlantModel& plant, const TpwlModel& model);

struct Metrics {
  double mse_mm2 = 0.0;          // mean over steps of the squared tracking error on tracked channels
  double max_violation = 0.0;    // m
  double mean_violation = 0.0;   // m, over all steps
  double violation_fraction = 0.0;  // max_violation / box width
  double qp_mean_ms = 0.0;       // per-window cumulative QP time
  double qp_min_ms = 0.0;
  double qp_max_ms = 0.0;
  int deadline_misses = 0;
  int windows = 0;
  int failed_windows = 0;
  bool aborted = false;
};

/// Box width used to normalize violations: the smallest finite width of the
/// performance box, or 1 when there is none.
double performance_box_width(const ExperimentConfig& config);

Metrics compute_metrics(const RunLog& log, const ExperimentConfig& config);
Json metrics_json(const Metrics& m);

/// CLI entry points. Each returns a process exit code.
int cmd_build_rom(const std::string& config_path);
int cmd_run(const std::string& config_path, const std::string& controller, const std::string& model_path);
int cmd_benchmark(const std::string& config_path, const std::string& model_path);
int cmd_target_preview(const std::string& config_path);

}  // namespace softrom
