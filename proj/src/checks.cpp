#include "hpsurf/checks.hpp"

#include <cmath>

namespace hpsurf {

bool PropertyReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

const CheckEntry* PropertyReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

std::string kind_name(ProviderKind k) {
  return k == ProviderKind::Exact ? "exact" : "finite-difference";
}

CheckEntry make_entry(const std::string& name, const SurfaceMap& surface,
                      const GridSpec& grid, const GridReduction& red, double tol) {
  CheckEntry e;
  e.name = name;
  e.max_residual = red.max_value;
  e.tolerance = tol;
  e.pass = red.any() && red.max_value <= tol;
  e.worst = red.argmax >= 0 ? grid.point(red.argmax) : PointXY{};
  e.excluded = red.excluded;
  e.provider = kind_name(surface.provider->kind());
  return e;
}

double resolve_tol(const SurfaceMap& surface, double tol) {
  return tol > 0 ? tol : default_tol(surface.provider->kind());
}

}  // namespace

CheckEntry check_horizontal(const SurfaceMap& lift, const GridSpec& grid, double tol,
                            Exec exec) {
  tol = resolve_tol(lift, tol);
  auto f = [&lift](double x, double y) -> std::optional<double> {
    const Jet jet = jet_at(lift, x, y, 1);
    const CVec& s = jet.value();
    const CVec js = j_map(s);
    const CVec& sz = jet.d(1, 0);
    const CVec& szb = jet.d(0, 1);
    double r = std::abs(herm_inner(sz, s));
    r = std::max(r, std::abs(herm_inner(sz, js)));
    r = std::max(r, std::abs(herm_inner(szb, s)));
    r = std::max(r, std::abs(herm_inner(szb, js)));
    return r;
  };
  return make_entry("horizontal", lift, grid, grid_max(grid, f, exec), tol);
}

CheckEntry check_totally_real(const SurfaceMap& surface, Target target,
                              const GridSpec& grid, double tol, Exec exec) {
  tol = resolve_tol(surface, tol);
  auto f = [&surface, target](double x, double y) -> std::optional<double> {
    const Jet jet = jet_at(surface, x, y, 1);
    if (target == Target::CP) {
      const double nz = jet.d(1, 0).squaredNorm();
      const double nzb = jet.d(0, 1).squaredNorm();
      return std::abs(nz - nzb);
    }
    const HorizontalDiff h = horizontal_diff(jet);
    const double nz = h.dz.squaredNorm();
    const double nzb = h.dzb.squaredNorm();
    if (metric_degenerate(nz + nzb)) throw degenerate_point("totally_real: degenerate");
    const double gap = std::abs(nz - nzb);
    const double pairing = std::abs(herm_inner(h.dz, j_map(h.dzb)));
    return std::max(gap, pairing);
  };
  const std::string name =
      target == Target::HP ? "totally_real_hp" : "totally_real_cp";
  return make_entry(name, surface, grid, grid_max(grid, f, exec), tol);
}

CVec minimal_cp_residual_vec(const Jet& jet) {
  const CVec& s = jet.value();
  const CVec& sz = jet.d(1, 0);
  const CVec& szb = jet.d(0, 1);
  const CVec& szzb = jet.d(1, 1);
  const Cplx a = herm_inner(sz, s);
  return szzb - herm_inner(szzb, s) * s - a * szb - herm_inner(szb, s) * sz -
         2.0 * std::norm(a) * s;
}

CheckEntry check_minimal_cp(const SurfaceMap& lift, const GridSpec& grid, double tol,
                            Exec exec) {
  tol = resolve_tol(lift, tol);
  auto f = [&lift](double x, double y) -> std::optional<double> {
    return minimal_cp_residual_vec(jet_at(lift, x, y, 2)).norm();
  };
  return make_entry("minimal_cp", lift, grid, grid_max(grid, f, exec), tol);
}

CVec minimal_hp_residual_vec(const Jet& jet) {
  const CVec& s = jet.value();
  const CVec js = j_map(s);
  const CVec& szb = jet.d(0, 1);
  const HorizontalDiff h = horizontal_diff(jet);
  const CVec jhzb = j_map(h.dzb);
  return dzb_of_horizontal_dz(jet) - herm_inner(szb, s) * h.dz -
         herm_inner(szb, js) * jhzb + h.dz.squaredNorm() * s +
         herm_inner(h.dz, jhzb) * js;
}

CheckEntry check_minimal_hp(const SurfaceMap& surface, const GridSpec& grid, double tol,
                            Exec exec) {
  tol = resolve_tol(surface, tol);
  auto f = [&surface](double x, double y) -> std::optional<double> {
    const Jet jet = jet_at(surface, x, y, 2);
    if (metric_degenerate(metric_factor(jet)))
      throw degenerate_point("minimal_hp: degenerate");
    return minimal_hp_residual_vec(jet).norm();
  };
  return make_entry("minimal_hp", surface, grid, grid_max(grid, f, exec), tol);
}

CMat cartan_az(const Jet& jet) {
  const CVec& s = jet.value();
  const CVec& sz = jet.d(1, 0);
  const CVec& szb = jet.d(0, 1);
  const CVec pz = sz - herm_inner(sz, s) * s;
  const CVec pzb = szb - herm_inner(szb, s) * s;
  return s * pzb.adjoint() - pz * s.adjoint();
}

double cartan_residual(const SurfaceMap& lift, const GridSpec& grid, double step,
                       Exec exec) {
  auto az = [&lift](double x, double y) { return cartan_az(jet_at(lift, x, y, 1)); };
  auto azb = [&lift](double x, double y) {
    const Jet jet = jet_at(lift, x, y, 1);
    const CVec& s = jet.value();
    const CVec& sz = jet.d(1, 0);
    const CVec& szb = jet.d(0, 1);
    const CVec pz = sz - herm_inner(sz, s) * s;
    const CVec pzb = szb - herm_inner(szb, s) * s;
    return CMat(s * pz.adjoint() - pzb * s.adjoint());
  };
  auto f = [&](double x, double y) -> std::optional<double> {
    const double h = step;
    // d_zb A_z by central differences of the assembled matrix field.
    const CMat dx = (az(x + h, y) - az(x - h, y)) / (2 * h);
    const CMat dy = (az(x, y + h) - az(x, y - h)) / (2 * h);
    const CMat dzb = 0.5 * (dx + Cplx(0, 1) * dy);
    const CMat A = az(x, y);
    const CMat B = azb(x, y);
    return max_abs(dzb - (A * B - B * A));
  };
  return grid_max(grid, f, exec).max_value;
}

CheckEntry check_cartan(const SurfaceMap& lift, const GridSpec& grid, double tol,
                        Exec exec) {
  // finite-difference assembly dominates the error budget
  tol = tol > 0 ? tol : 1e-6;
  CheckEntry e;
  e.name = "cartan";
  e.max_residual = cartan_residual(lift, grid, 1e-4, exec);
  e.tolerance = tol;
  e.pass = e.max_residual <= tol;
  e.provider = lift.provider->kind() == ProviderKind::Exact ? "exact" : "finite-difference";
  return e;
}

std::pair<CheckEntry, CheckEntry> check_flat_isometric(const SurfaceMap& surface,
                                                       const GridSpec& grid, double tol,
                                                       double target_factor, Exec exec) {
  const double flat_tol = tol > 0 ? tol : 1e-6;
  const double iso_tol = resolve_tol(surface, tol);
  auto fk = [&surface](double x, double y) -> std::optional<double> {
    return std::abs(gauss_curvature(surface, x, y));
  };
  auto fi = [&surface, target_factor](double x, double y) -> std::optional<double> {
    const double m = metric_factor(jet_at(surface, x, y, 1));
    if (metric_degenerate(m)) throw degenerate_point("isometric: degenerate");
    return std::abs(m - target_factor);
  };
  CheckEntry flat = make_entry("flat", surface, grid, grid_max(grid, fk, exec), flat_tol);
  CheckEntry iso =
      make_entry("isometric_factor", surface, grid, grid_max(grid, fi, exec), iso_tol);
  return {flat, iso};
}

PropertyReport run_standard_checks(const SurfaceMap& surface, const GridSpec& grid,
                                   double tol, double target_factor, Exec exec) {
  PropertyReport report;
  report.grid = grid;
  report.entries.push_back(check_horizontal(surface, grid, tol, exec));
  report.entries.push_back(check_totally_real(surface, Target::HP, grid, tol, exec));
  report.entries.push_back(check_totally_real(surface, Target::CP, grid, tol, exec));
  report.entries.push_back(check_minimal_hp(surface, grid, tol, exec));
  report.entries.push_back(check_minimal_cp(surface, grid, tol, exec));
  report.entries.push_back(check_cartan(surface, grid, -1, exec));
  auto [flat, iso] = check_flat_isometric(surface, grid, tol, target_factor, exec);
  report.entries.push_back(flat);
  report.entries.push_back(iso);
  return report;
}

}  // namespace hpsurf
