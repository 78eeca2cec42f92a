#pragma once

// Induced-metric quantities of a lift: horizontal differential, conformal
// factor, quaternionic Kahler angles, CP Kahler angle, Gauss curvature.

#include "hpsurf/providers.hpp"

namespace hpsurf {

struct HorizontalDiff {
  CVec dz;   // d^H s(d/dz)
  CVec dzb;  // d^H s(d/dzb)
};

// d^H s = ds - <ds,s> s - <ds,js> js, evaluated on both Wirtinger directions.
HorizontalDiff horizontal_diff(const Jet& jet);

// e^{2u} = |d^H s(dz)|^2 + |d^H s(dzb)|^2.
double metric_factor(const Jet& jet);
bool metric_degenerate(double factor);

struct AngleReport {
  double cos_a1 = 0;
  double cos_a2 = 0;
  double cos_a3 = 0;
  double cos_sq_alpha = 0;
  double x = 0, y = 0;
};

// The three local angles and the global cos^2(alpha); throws degenerate_point
// when the metric factor vanishes.
AngleReport angles(const Jet& jet);

// Kahler angle of [s] in CP^{2n+1}: tan(theta/2) = |s^perp dzb s| / |s^perp dz s|,
// in [0, pi]; antiholomorphic degenerate points return pi.
double cp_kahler_angle(const Jet& jet);

// K = -4 e^{-2u} dz dzb u with u = log(metric_factor)/2, via central
// differences of the metric factor field (same step policy as jets).
double gauss_curvature(const SurfaceMap& surface, double x, double y,
                       double step = 1e-4, int richardson_levels = 1);

// d_zb of the assembled field d^H s(dz), exact from order-2 jets.
CVec dzb_of_horizontal_dz(const Jet& jet);

}  // namespace hpsurf
