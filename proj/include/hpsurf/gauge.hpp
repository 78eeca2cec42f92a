#pragma once

// The horizontal-lift construction: connection matrix D = (s,js)* dz (s,js),
// its integrability residual, SU(2)-valued transport along paths, and
// horizontalization of a unit lift.

#include "hpsurf/checks.hpp"

namespace hpsurf {

// 2x2 connection matrix from the order-1 jet of a unit lift.
CMat compute_D(const Jet& jet);

// Exact-jet assembly of dzb D + dz D* + [D, D*] (order-2 jets).
CMat integrability_matrix(const Jet& jet);
// The same matrix expressed through the horizontal differential; equals
// integrability_matrix identically for any unit lift.
CMat integrability_angle_matrix(const Jet& jet);
double integrability_residual(const SurfaceMap& lift, const GridSpec& grid,
                              Exec exec = Exec::Auto);

struct GaugeFrame {
  CMat T;  // SU(2)
  PointXY base;
};

struct GaugeField {
  std::function<CMat(double, double)> D;
};

GaugeField gauge_field(const SurfaceMap& lift);

struct TransportResult {
  GaugeFrame frame;
  double max_unitary_drift = 0.0;  // worst ||T*T - I|| before re-projection
  double max_det_drift = 0.0;      // worst |det T - 1| before re-projection
  long steps = 0;
};

// Solves dT + (D dz - D* dzb) T = 0 along the polyline with classical RK4
// and per-step re-projection to SU(2).
TransportResult integrate_gauge(const GaugeField& field,
                                const std::vector<PointXY>& path, const GaugeFrame& T0,
                                double step_length);

// Transport around the closed rectangle through the cell corners.
TransportResult loop_transport(const SurfaceMap& lift, const Cell& cell,
                               double step_length);

struct HorizontalizeOptions {
  double step_length = 0.0;            // 0: 1e-3 of the cell extent
  double integrability_tol = 1e-4;
  double su2_tol = 1e-8;               // validation tolerance for T0
};

// New lift s~ = first column of (s, js) T with T transported along
// axis-aligned L-paths from the base point. Throws std::domain_error when the
// integrability residual rejects the surface.
SurfaceMap horizontalize(const SurfaceMap& lift, PointXY base_point,
                         const GridSpec& probe_grid,
                         HorizontalizeOptions options = {});

CMat project_su2(const CMat& T);

}  // namespace hpsurf
