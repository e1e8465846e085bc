#pragma once

// Persistence: single-file matrix archives (JSON manifest + raw doubles),
// model/basis round-trips, run-log CSV export and JSON mesh loading.

#include "softrom/loop.hpp"
#include "softrom/mor.hpp"
#include "softrom/plant.hpp"
#include "softrom/tpwl.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>

namespace softrom {

using Json = nlohmann::json;

/// 64-bit FNV-1a.
std::uint64_t fnv1a(const void* data, std::size_t size, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint64_t fnv1a(const std::string& text);
std::uint64_t hash_matrix(const Mat& m, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::string hex_hash(std::uint64_t h);

/// Hash over topology, cables, parameters and output maps.
std::uint64_t plant_hash(const PlantModel& plant);

/// Matrices keyed by name plus a free-form manifest.
struct MatrixArchive {
  Json manifest = Json::object();
  std::map<std::string, Mat> matrices;

  const Mat& get(const std::string& name) const;
  Vec vec(const std::string& name) const;
};

/// Layout: "SOFTROM\0", u64 manifest byte count, manifest JSON (which also
/// records each matrix's name, shape and byte offset), column-major doubles.
void write_archive(const std::string& path, const MatrixArchive& archive);
MatrixArchive read_archive(const std::string& path);

/// Model archive with `extra` merged into the manifest under "build".
void save_model(const std::string& path, const TpwlModel& model, const Json& extra = Json::object());
TpwlModel load_model(const std::string& path, Json* manifest = nullptr);

/// Basis archive plus a JSON sidecar (path + ".json") with dims, kind, seed and reference hash.
void save_basis(const std::string& path, const ReducedBasis& basis, SnapshotKind kind, std::uint64_t seed);
ReducedBasis load_basis(const std::string& path);

void save_snapshots(const std::string& path, const SnapshotSet& set, std::uint64_t seed);
SnapshotSet load_snapshots(const std::string& path);

/// Per-step run log. The first line is "# config_hash=<hex>". Contains no
/// wall-clock data, so identical runs produce identical files.
void write_runlog_csv(const std::string& path, const RunLog& log, const std::string& config_hash);

/// Per-window planner metadata without timings.
void write_windows_csv(const std::string& path, const RunLog& log, const std::string& config_hash);

/// Per-window timings (QP times and solve wall time, milliseconds).
void write_timing_csv(const std::string& path, const RunLog& log, const std::string& config_hash);

/// Mesh, cables and output selection from JSON:
/// {"nodes": [[x,y,z],...], "edges": [[a,b,k] or [a,b,k,L]], "fixed": [...],
///  "masses": [...] | "mass": m, "cables": [{"node": i, "anchor": [x,y,z]}],
///  "end_effector": i, "elbows": [...]}
PlantModel plant_from_json(const Json& j, const PlantParams& params);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace softrom
