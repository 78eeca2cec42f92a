#include "hpsurf/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "hpsurf/gauge.hpp"

namespace hpsurf {

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump_rec(const Json& j, std::string& out, int indent, int level) {
  const std::string pad(static_cast<size_t>(indent) * level, ' ');
  const std::string pad_in(static_cast<size_t>(indent) * (level + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in + Json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent, level + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_rec(j[i], out, indent, level + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump_deterministic(const Json& doc, int indent) {
  std::string out;
  dump_rec(doc, out, indent, 0);
  out += "\n";
  return out;
}

Json json_complex(Cplx z) { return Json::array({z.real(), z.imag()}); }

Json json_check(const CheckEntry& e) {
  Json j;
  j["name"] = e.name;
  j["max_residual"] = e.max_residual;
  j["tolerance"] = e.tolerance;
  j["pass"] = e.pass;
  j["worst_point"] = Json::array({e.worst.x, e.worst.y});
  j["excluded_points"] = e.excluded;
  j["provider"] = e.provider;
  return j;
}

Json json_report(const PropertyReport& r) {
  Json j;
  j["grid"] = {{"nx", r.grid.nx},
               {"ny", r.grid.ny},
               {"cell", Json::array({r.grid.cell.x0, r.grid.cell.x1, r.grid.cell.y0,
                                     r.grid.cell.y1})}};
  Json checks = Json::array();
  for (const auto& e : r.entries) checks.push_back(json_check(e));
  j["checks"] = checks;
  j["pass"] = r.all_pass();
  return j;
}

Json json_scan(const ScanReport& r) {
  Json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["params_feasible"] = r.params_feasible;
  j["attempts"] = r.attempts;
  j["thetas"] = r.thetas;
  j["weights"] = r.weights;
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"i", e.i}, {"j", e.j}, {"forced_zero", e.forced_zero}});
  j["w_entries"] = entries;
  j["topleft_block_zero"] = r.topleft_block_zero;
  j["unitary_feasible"] = r.unitary_feasible;
  Json c;
  c["ran"] = r.closure.ran;
  if (r.closure.ran) {
    c["feasible"] = r.closure.feasible;
    c["a_coef"] = json_complex(r.closure.a_coef);
    c["b_abs"] = r.closure.b_abs;
    Json ratios = Json::array();
    for (Cplx w : r.closure.w_ratio) ratios.push_back(json_complex(w));
    c["w_ratio"] = ratios;
    c["alternating"] = r.closure.alternating;
    c["exponents_are_roots_of_unity"] = r.closure.exponents_are_roots;
  }
  j["closure"] = c;
  return j;
}

std::string csv_angle_table(const SurfaceMap& surface, const GridSpec& grid) {
  std::string out = std::string(kAngleCsvHeader) + "\n";
  for (int idx = 0; idx < grid.size(); ++idx) {
    const PointXY p = grid.point(idx);
    double mf = std::nan(""), c2 = std::nan(""), c1 = std::nan(""), ca2 = std::nan(""),
           ca3 = std::nan(""), K = std::nan("");
    try {
      const Jet jet = jet_at(surface, p.x, p.y, 1);
      mf = metric_factor(jet);
      const AngleReport a = angles(jet);
      c2 = a.cos_sq_alpha;
      c1 = a.cos_a1;
      ca2 = a.cos_a2;
      ca3 = a.cos_a3;
      K = gauss_curvature(surface, p.x, p.y);
    } catch (const degenerate_point&) {
    }
    out += format_double(p.x) + "," + format_double(p.y) + "," + format_double(mf) +
           "," + format_double(c2) + "," + format_double(c1) + "," +
           format_double(ca2) + "," + format_double(ca3) + "," + format_double(K) +
           "\n";
  }
  return out;
}

void RunConfig::validate() const {
  if (command != "verify" && command != "angle" && command != "sequence" &&
      command != "gauge" && command != "scan")
    throw std::invalid_argument("unknown command: " + command);
  if (variant != "clifford" && variant != "companion" && variant != "companion-even" &&
      variant != "exponential")
    throw std::invalid_argument("unknown variant: " + variant);
  if (grid_nx < 3 || grid_ny < 3)
    throw std::invalid_argument("grid resolution must be at least 3 per axis");
  if (tol != -1.0 && !(tol > 0))
    throw std::invalid_argument("tolerance must be positive");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (variant == "exponential" && (thetas.empty() || thetas.size() != weights.size()))
    throw std::invalid_argument("exponential variant needs matching --theta/--weights");
}

SurfaceMap surface_from_config(const RunConfig& config) {
  if (config.variant == "exponential") {
    ExponentialFamily fam{config.thetas, config.weights};
    return make_exponential(fam);
  }
  ClassifiedSpec spec;
  spec.n = config.n;
  if (config.variant == "clifford") {
    spec.variant = Variant::Clifford;
    spec.lift = LiftVariant::InterleavedZeros;
  } else if (config.variant == "companion") {
    spec.variant = Variant::Companion;
    spec.lift = LiftVariant::FullSigned;
  } else {
    spec.variant = Variant::Companion;
    spec.lift = LiftVariant::FullEvenN;
    spec.phase = std::exp(Cplx(0, config.phase_arg));
    spec.weight_ratio = config.weight_ratio;
  }
  return make_classified(spec).lift;
}

GridSpec grid_from_config(const RunConfig& config, const SurfaceMap& surface) {
  GridSpec grid;
  grid.cell = config.cell.value_or(surface.cell);
  grid.nx = config.grid_nx;
  grid.ny = config.grid_ny;
  return grid;
}

namespace {

Json config_echo(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["variant"] = c.variant;
  j["n"] = c.n;
  j["grid"] = Json::array({c.grid_nx, c.grid_ny});
  j["tol"] = c.tol;
  j["depth"] = c.depth;
  j["seed"] = c.seed;
  j["target_factor"] = c.target_factor;
  if (!c.thetas.empty()) {
    j["thetas"] = c.thetas;
    j["weights"] = c.weights;
  }
  return j;
}

RunOutcome run_verify(const RunConfig& config) {
  const SurfaceMap surface = surface_from_config(config);
  const GridSpec grid = grid_from_config(config, surface);
  PropertyReport report =
      run_standard_checks(surface, grid, config.tol, config.target_factor);
  CheckEntry integrable;
  integrable.name = "integrability";
  integrable.max_residual = integrability_residual(surface, grid);
  integrable.tolerance = config.tol > 0 ? config.tol : 1e-8;
  integrable.pass = integrable.max_residual <= integrable.tolerance;
  integrable.provider =
      surface.provider->kind() == ProviderKind::Exact ? "exact" : "finite-difference";
  report.entries.push_back(integrable);

  RunOutcome out;
  out.doc = json_report(report);
  out.status = report.all_pass() ? RunStatus::Pass : RunStatus::CheckFailure;
  return out;
}

RunOutcome run_angle(const RunConfig& config) {
  const SurfaceMap surface = surface_from_config(config);
  const GridSpec grid = grid_from_config(config, surface);
  RunOutcome out;
  out.csv = csv_angle_table(surface, grid);
  auto fmax = [&](auto&& f) {
    return grid_max(grid, [&](double x, double y) -> std::optional<double> {
             return f(jet_at(surface, x, y, 1));
           })
        .max_value;
  };
  Json j;
  j["max_cos_sq_alpha"] =
      fmax([](const Jet& jet) { return angles(jet).cos_sq_alpha; });
  j["max_metric_deviation"] = fmax([&](const Jet& jet) {
    return std::abs(metric_factor(jet) - config.target_factor);
  });
  j["csv_header"] = kAngleCsvHeader;
  out.doc = j;
  out.status = RunStatus::Pass;
  return out;
}

RunOutcome run_sequence(const RunConfig& config) {
  const SurfaceMap surface = surface_from_config(config);
  const GridSpec grid = grid_from_config(config, surface);
  const int depth = config.depth > 0 ? config.depth : 2 * surface.hp_n() + 2;
  const IsotropyResult iso = isotropy_order(surface, grid, depth,
                                            config.tol > 0 ? config.tol : 1e-6);
  const CheckEntry prop = check_prop35(surface, grid, surface.hp_n() + 1,
                                       config.tol > 0 ? config.tol : 1e-8);
  Json j;
  j["depth"] = depth;
  j["isotropy_order"] = iso.order;
  j["at_least"] = iso.at_least;
  j["full"] = iso.full;
  if (!iso.full) j["terminating_index"] = iso.terminating_index;
  j["span_rank"] = lift_span_rank(surface, grid);
  j["prop35"] = json_check(prop);
  RunOutcome out;
  out.doc = j;
  out.status = prop.pass ? RunStatus::Pass : RunStatus::CheckFailure;
  return out;
}

RunOutcome run_gauge(const RunConfig& config) {
  const SurfaceMap surface = surface_from_config(config);
  const GridSpec grid = grid_from_config(config, surface);
  // gauge the lift by a seeded smooth SU(2) field, then recover a horizontal one
  auto gauged_provider = std::make_shared<GaugedLift>(
      surface.provider, SU2Field::random(config.seed));
  const SurfaceMap gauged{gauged_provider, surface.cell};
  const CheckEntry before = check_horizontal(gauged, grid);
  const SurfaceMap restored = horizontalize(gauged, grid.point(0), grid);
  const CheckEntry after = check_horizontal(restored, grid, 1e-6);
  // realized-function horizontality: finite differences of the transported
  // frame itself (the jet route encodes the transport equation exactly)
  GridSpec probe = grid;
  probe.nx = probe.ny = 3;
  const SurfaceMap restored_fd{FiniteDifferenceProvider::wrap(restored), restored.cell};
  const CheckEntry after_fd = check_horizontal(restored_fd, probe, 1e-6);
  double max_hpoint = 0;
  for (int idx = 0; idx < grid.size(); ++idx) {
    const PointXY p = grid.point(idx);
    const HPoint a = twistor_project(jet_at(surface, p.x, p.y, 0).value());
    const HPoint b = twistor_project(jet_at(restored, p.x, p.y, 0).value());
    max_hpoint = std::max(max_hpoint, hpoint_distance(a, b));
  }
  const TransportResult loop =
      loop_transport(gauged, grid.cell, 1e-3 * grid.cell.min_extent());
  const double holonomy = max_abs(CMat(loop.frame.T - CMat::Identity(2, 2)));

  Json j;
  j["gauged_horizontal_residual"] = before.max_residual;
  j["restored_horizontal"] = json_check(after);
  j["restored_horizontal_fd"] = json_check(after_fd);
  j["hpoint_max_distance"] = max_hpoint;
  j["loop_holonomy"] = holonomy;
  j["unitary_drift"] = loop.max_unitary_drift;
  RunOutcome out;
  out.doc = j;
  const bool ok =
      after.pass && after_fd.pass && max_hpoint <= 1e-10 && holonomy <= 1e-6;
  out.status = ok ? RunStatus::Pass : RunStatus::CheckFailure;
  return out;
}

RunOutcome run_scan(const RunConfig& config) {
  ScanParams params;
  params.n = config.n;
  params.m = config.scan_m > 0 ? config.scan_m : config.n;
  params.trials = config.scan_trials;
  params.seed = config.seed;
  if (!config.thetas.empty()) params.thetas = config.thetas;
  const ScanReport report = constraint_scan(params);
  RunOutcome out;
  out.doc = json_scan(report);
  out.status = report.params_feasible ? RunStatus::Pass : RunStatus::CheckFailure;
  return out;
}

}  // namespace

RunOutcome run_command(const RunConfig& config) {
  RunOutcome out;
  try {
    config.validate();
  } catch (const std::exception& e) {
    out.status = RunStatus::ConfigError;
    out.doc = Json{{"error", e.what()}, {"kind", "config"}};
    return out;
  }
  try {
    const auto started = std::chrono::steady_clock::now();
    if (config.command == "verify")
      out = run_verify(config);
    else if (config.command == "angle")
      out = run_angle(config);
    else if (config.command == "sequence")
      out = run_sequence(config);
    else if (config.command == "gauge")
      out = run_gauge(config);
    else
      out = run_scan(config);
    out.doc["config"] = config_echo(config);
    if (config.timings) {
      const auto elapsed = std::chrono::duration<double>(
                               std::chrono::steady_clock::now() - started)
                               .count();
      out.doc["timings"] = Json{{"total_seconds", elapsed}};
    }
  } catch (const std::invalid_argument& e) {
    out.status = RunStatus::ConfigError;
    out.doc = Json{{"error", e.what()}, {"kind", "config"}};
  } catch (const std::exception& e) {
    out.status = RunStatus::InternalError;
    out.doc = Json{{"error", e.what()}, {"kind", "internal"}};
  }
  return out;
}

}  // namespace hpsurf
