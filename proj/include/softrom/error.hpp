#pragma once

#include <stdexcept>
#include <string>

namespace softrom {

enum class ErrorKind {
  DegenerateGeometry,
  Integration,
  Divergence,
  EquilibriumNotFound,
  Dimension,
  DegenerateData,
  PartialData,
  ModelBuild,
  Discretization,
  Estimator,
  Riccati,
  Range,
  Config,
  Io,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateGeometry: return "degenerate geometry";
    case ErrorKind::Integration: return "integration error";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::EquilibriumNotFound: return "equilibrium not found";
    case ErrorKind::Dimension: return "dimension error";
    case ErrorKind::DegenerateData: return "degenerate data";
    case ErrorKind::PartialData: return "partial data";
    case ErrorKind::ModelBuild: return "model build error";
    case ErrorKind::Discretization: return "discretization error";
    case ErrorKind::Estimator: return "estimator error";
    case ErrorKind::Riccati: return "riccati error";
    case ErrorKind::Range: return "range error";
    case ErrorKind::Config: return "config error";
    case ErrorKind::Io: return "io error";
  }
  return "error";
}

}  // namespace softrom
