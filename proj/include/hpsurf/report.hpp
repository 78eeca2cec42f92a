#pragma once

// Machine-readable reports: deterministic JSON (sorted keys, 17-significant-
// digit floats, complex numbers as [re, im]) and CSV grids, plus the
// command-level runner used by the CLI.

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>

#include "hpsurf/scan.hpp"

namespace hpsurf {

using Json = nlohmann::json;

// Deterministic serialization of a JSON document.
std::string dump_deterministic(const Json& doc, int indent = 2);

Json json_complex(Cplx z);
Json json_check(const CheckEntry& e);
Json json_report(const PropertyReport& r);
Json json_scan(const ScanReport& r);

// Row-major CSV with the exact documented header.
std::string csv_angle_table(const SurfaceMap& surface, const GridSpec& grid);
inline constexpr const char* kAngleCsvHeader =
    "x,y,metric_factor,cos_sq_alpha,cos_a1,cos_a2,cos_a3,gauss_curvature";

struct RunConfig {
  std::string command = "verify";  // verify | angle | sequence | gauge | scan
  std::string variant = "clifford";  // clifford | companion | companion-even | exponential
  int n = 1;
  std::vector<double> thetas;   // exponential family parameters
  std::vector<double> weights;
  int grid_nx = 9, grid_ny = 9;
  std::optional<Cell> cell;
  double tol = -1.0;
  int depth = 0;  // 0 = family default
  std::uint64_t seed = 0;
  double target_factor = 2.0;
  double phase_arg = 0.0;      // arg of the even-n lift phase
  double weight_ratio = 3.0;
  int scan_m = -1;
  int scan_trials = 64;
  bool timings = false;

  void validate() const;  // throws std::invalid_argument on bad values
};

enum class RunStatus : int {
  Pass = 0,
  CheckFailure = 1,
  ConfigError = 2,
  InternalError = 3,
};

struct RunOutcome {
  RunStatus status = RunStatus::InternalError;
  Json doc;
  std::string csv;  // empty unless the command produces a grid table
};

RunOutcome run_command(const RunConfig& config);

// Surface selection shared by the runner and tests.
SurfaceMap surface_from_config(const RunConfig& config);
GridSpec grid_from_config(const RunConfig& config, const SurfaceMap& surface);

}  // namespace hpsurf
