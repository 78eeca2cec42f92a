#include "hpsurf/surface.hpp"

#include <cmath>

namespace hpsurf {

HorizontalDiff horizontal_diff(const Jet& jet) {
  if (jet.order() < 1) throw std::invalid_argument("horizontal_diff: order-1 jet required");
  const CVec& s = jet.value();
  const CVec js = j_map(s);
  const CVec& sz = jet.d(1, 0);
  const CVec& szb = jet.d(0, 1);
  HorizontalDiff h;
  h.dz = sz - herm_inner(sz, s) * s - herm_inner(sz, js) * js;
  h.dzb = szb - herm_inner(szb, s) * s - herm_inner(szb, js) * js;
  return h;
}

double metric_factor(const Jet& jet) {
  const HorizontalDiff h = horizontal_diff(jet);
  return h.dz.squaredNorm() + h.dzb.squaredNorm();
}

bool metric_degenerate(double factor) { return !(factor > kDegenerateThreshold); }

AngleReport angles(const Jet& jet) {
  const HorizontalDiff h = horizontal_diff(jet);
  const double nz = h.dz.squaredNorm();
  const double nzb = h.dzb.squaredNorm();
  const double denom = nz + nzb;
  if (metric_degenerate(denom)) throw degenerate_point("angles: degenerate metric factor");
  const Cplx w = herm_inner(h.dz, j_map(h.dzb));
  AngleReport r;
  r.x = jet.x;
  r.y = jet.y;
  r.cos_a1 = (nz - nzb) / denom;
  // i[<dHz, j dHzb> - <j dHzb, dHz>] = -2 Im(w); <..> + <..>* = 2 Re(w)
  r.cos_a2 = -2.0 * w.imag() / denom;
  r.cos_a3 = 2.0 * w.real() / denom;
  r.cos_sq_alpha = ((nz - nzb) * (nz - nzb) + 4.0 * std::norm(w)) / (denom * denom);
  return r;
}

double cp_kahler_angle(const Jet& jet) {
  const CVec& s = jet.value();
  const CVec& sz = jet.d(1, 0);
  const CVec& szb = jet.d(0, 1);
  const CVec pz = sz - herm_inner(sz, s) * s;
  const CVec pzb = szb - herm_inner(szb, s) * s;
  const double a = pzb.norm();
  const double b = pz.norm();
  if (a * a + b * b < kDegenerateThreshold)
    throw degenerate_point("cp_kahler_angle: both projected derivatives vanish");
  return 2.0 * std::atan2(a, b);
}

double gauss_curvature(const SurfaceMap& surface, double x, double y, double step,
                       int richardson_levels) {
  auto u = [&](double xx, double yy) {
    const double f = metric_factor(jet_at(surface, xx, yy, 1));
    if (metric_degenerate(f))
      throw degenerate_point("gauss_curvature: degenerate neighborhood");
    return 0.5 * std::log(f);
  };
  auto laplacian = [&](double h) {
    return (u(x + h, y) + u(x - h, y) + u(x, y + h) + u(x, y - h) - 4.0 * u(x, y)) /
           (h * h);
  };
  double h = step;
  double lap = laplacian(h);
  for (int level = 0; level < richardson_levels; ++level) {
    h *= 0.5;
    const double fine = laplacian(h);
    lap = (4.0 * fine - lap) / 3.0;
  }
  // dz dzb u = Lap(u)/4 and K = -4 e^{-2u} dz dzb u.
  const double e2u = metric_factor(jet_at(surface, x, y, 1));
  if (metric_degenerate(e2u)) throw degenerate_point("gauss_curvature: degenerate point");
  return -lap / e2u;
}

CVec dzb_of_horizontal_dz(const Jet& jet) {
  if (jet.order() < 2) throw std::invalid_argument("dzb_of_horizontal_dz: order-2 jet required");
  const CVec& s = jet.value();
  const CVec js = j_map(s);
  const CVec& sz = jet.d(1, 0);
  const CVec& szb = jet.d(0, 1);
  const CVec& szzb = jet.d(1, 1);
  const Cplx a = herm_inner(sz, s);
  const Cplx b = herm_inner(sz, js);
  // d_zb <s_z, s> and d_zb <s_z, js>, using d_z(js) = j(s_zb).
  const Cplx da = herm_inner(szzb, s) + herm_inner(sz, sz);
  const Cplx db = herm_inner(szzb, js) + herm_inner(sz, j_map(szb));
  return szzb - da * s - a * szb - db * js - b * j_map(sz);
}

}  // namespace hpsurf
