#pragma once

// Residual-based verification of horizontality, total reality, minimality
// (CP and HP targets), flatness and the isometric factor, plus the
// Cartan-embedding zero-curvature oracle.

#include "hpsurf/grid.hpp"
#include "hpsurf/surface.hpp"

namespace hpsurf {

struct CheckEntry {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  PointXY worst;
  long excluded = 0;
  std::string provider;  // "exact" or "finite-difference"
};

struct PropertyReport {
  GridSpec grid;
  std::vector<CheckEntry> entries;

  bool all_pass() const;
  const CheckEntry* find(const std::string& name) const;
};

enum class Target { HP, CP };

CheckEntry check_horizontal(const SurfaceMap& lift, const GridSpec& grid,
                            double tol = -1, Exec exec = Exec::Auto);

// HP: both conditions |dHz|^2 = |dHzb|^2 and <dHz, j dHzb> = 0.
// CP: the norm gap | |s_z|^2 - |s_zb|^2 |.
CheckEntry check_totally_real(const SurfaceMap& surface, Target target,
                              const GridSpec& grid, double tol = -1,
                              Exec exec = Exec::Auto);

// Residual of s_zzb - <s_zzb,s>s - <s_z,s>s_zb - <s_zb,s>s_z - 2|<s_z,s>|^2 s.
CheckEntry check_minimal_cp(const SurfaceMap& lift, const GridSpec& grid,
                            double tol = -1, Exec exec = Exec::Auto);
CVec minimal_cp_residual_vec(const Jet& jet);

// Residual of d_zb[dHs(dz)] - <s_zb,s> dHs(dz) - <s_zb,js> j dHs(dzb)
//             + |dHs(dz)|^2 s + <dHs(dz), j dHs(dzb)> js.
CheckEntry check_minimal_hp(const SurfaceMap& surface, const GridSpec& grid,
                            double tol = -1, Exec exec = Exec::Auto);
CVec minimal_hp_residual_vec(const Jet& jet);

// Max norm of d_zb A_z - [A_z, A_zb] with A_z assembled from order-1 jets and
// differentiated by central stencils (independent of the jet route above).
double cartan_residual(const SurfaceMap& lift, const GridSpec& grid,
                       double step = 1e-4, Exec exec = Exec::Auto);
CheckEntry check_cartan(const SurfaceMap& lift, const GridSpec& grid, double tol = -1,
                        Exec exec = Exec::Auto);

// flat: max |gauss_curvature|; isometric: max |metric_factor - target|.
std::pair<CheckEntry, CheckEntry> check_flat_isometric(const SurfaceMap& surface,
                                                       const GridSpec& grid,
                                                       double tol = -1,
                                                       double target_factor = 2.0,
                                                       Exec exec = Exec::Auto);

// A_z evaluated from the order-1 jet of a unit lift.
CMat cartan_az(const Jet& jet);

PropertyReport run_standard_checks(const SurfaceMap& surface, const GridSpec& grid,
                                   double tol = -1, double target_factor = 2.0,
                                   Exec exec = Exec::Auto);

}  // namespace hpsurf
