// hpsurf command-line front end: verification suites over configurable
// surfaces and grids, with JSON reports and CSV grids of pointwise data.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hpsurf/report.hpp"

namespace {

struct CliState {
  hpsurf::RunConfig config;
  std::vector<double> cell;
  std::string grid;
  std::string out_path;
  std::string csv_path;
};

void add_common(CLI::App* cmd, CliState& st) {
  cmd->add_option("--variant", st.config.variant,
                  "surface family: clifford | companion | companion-even | exponential");
  cmd->add_option("--n", st.config.n, "quaternionic projective dimension n");
  cmd->add_option("--theta", st.config.thetas,
                  "exponential-family angles theta_0,theta_1,... (radians)")
      ->delimiter(',');
  cmd->add_option("--weights", st.config.weights,
                  "exponential-family weights r_0,r_1,...")
      ->delimiter(',');
  cmd->add_option("--cell", st.cell, "domain cell x0,x1,y0,y1")
      ->delimiter(',')
      ->expected(4);
  cmd->add_option("--grid", st.grid, "grid resolution WxH (default 9x9)");
  cmd->add_option("--tol", st.config.tol, "verdict tolerance (default per provider)");
  cmd->add_option("--depth", st.config.depth, "harmonic sequence depth");
  cmd->add_option("--seed", st.config.seed, "seed for all randomness");
  cmd->add_option("--target-factor", st.config.target_factor,
                  "isometric conformal factor target (default 2)");
  cmd->add_option("--phase", st.config.phase_arg,
                  "argument of the even-n lift phase parameter");
  cmd->add_option("--weight-ratio", st.config.weight_ratio,
                  "r0/r1 split of the even-n lift");
  cmd->add_flag("--timings", st.config.timings,
                "include wall-clock timings in the report");
  cmd->add_option("--out", st.out_path, "write the JSON report to this path");
  cmd->add_option("--json", st.out_path, "alias of --out");
  cmd->add_option("--csv", st.csv_path, "write the pointwise CSV grid to this path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical verification toolkit for flat minimal surfaces in "
               "quaternionic projective space"};
  app.require_subcommand(1);

  CliState st;
  auto* verify = app.add_subcommand("verify", "run the residual check suite");
  auto* angle = app.add_subcommand("angle", "pointwise angle/metric/curvature grid");
  auto* sequence = app.add_subcommand("sequence", "harmonic sequence diagnostics");
  auto* gauge = app.add_subcommand("gauge", "gauge round trip and holonomy");
  auto* scan = app.add_subcommand("scan", "constraint scan on family parameters");
  for (CLI::App* cmd : {verify, angle, sequence, gauge, scan}) add_common(cmd, st);
  scan->add_option("--m", st.config.scan_m, "top family index of the scan");
  scan->add_option("--trials", st.config.scan_trials, "sampling attempts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(hpsurf::RunStatus::ConfigError);
  }

  st.config.command = app.get_subcommands().front()->get_name();
  if (st.cell.size() == 4)
    st.config.cell = hpsurf::Cell{st.cell[0], st.cell[1], st.cell[2], st.cell[3]};
  if (!st.grid.empty()) {
    const auto x = st.grid.find('x');
    if (x == std::string::npos) {
      std::cerr << "--grid expects WxH\n";
      return static_cast<int>(hpsurf::RunStatus::ConfigError);
    }
    try {
      st.config.grid_nx = std::stoi(st.grid.substr(0, x));
      st.config.grid_ny = std::stoi(st.grid.substr(x + 1));
    } catch (const std::exception&) {
      std::cerr << "--grid expects WxH\n";
      return static_cast<int>(hpsurf::RunStatus::ConfigError);
    }
  }

  const hpsurf::RunOutcome outcome = hpsurf::run_command(st.config);
  const std::string text = hpsurf::dump_deterministic(outcome.doc);

  if (st.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(st.out_path);
    if (!out) {
      std::cerr << "cannot write " << st.out_path << "\n";
      return static_cast<int>(hpsurf::RunStatus::InternalError);
    }
    out << text;
  }
  if (!st.csv_path.empty() && !outcome.csv.empty()) {
    std::ofstream out(st.csv_path);
    if (!out) {
      std::cerr << "cannot write " << st.csv_path << "\n";
      return static_cast<int>(hpsurf::RunStatus::InternalError);
    }
    out << outcome.csv;
  }
  if (outcome.status != hpsurf::RunStatus::Pass && outcome.doc.contains("error")) {
    std::cerr << outcome.doc["error"].get<std::string>() << "\n";
  }
  return static_cast<int>(outcome.status);
}
