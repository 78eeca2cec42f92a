#include "hpsurf/gauge.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <map>
#include <mutex>

namespace hpsurf {

CMat compute_D(const Jet& jet) {
  const CVec& s = jet.value();
  const CVec js = j_map(s);
  const CVec& sz = jet.d(1, 0);
  const CVec jszb = j_map(jet.d(0, 1));  // dz(js) = j(s_zb)
  CMat D(2, 2);
  D(0, 0) = herm_inner(sz, s);
  D(0, 1) = herm_inner(jszb, s);
  D(1, 0) = herm_inner(sz, js);
  D(1, 1) = herm_inner(jszb, js);
  return D;
}

namespace {

// Jets (order jet.order()-1) of the four entries of D.
std::array<ScalarJet, 4> d_entry_jets(const Jet& jet) {
  const VecJet s = jet.jets;
  const VecJet js = vj_j(s);
  const VecJet dzs = vj_dz(s);
  const VecJet dzjs = vj_dz(js);
  return {vj_inner(dzs, s), vj_inner(dzjs, s), vj_inner(dzs, js), vj_inner(dzjs, js)};
}

CMat entry_values(const std::array<ScalarJet, 4>& e, int p, int q) {
  CMat m(2, 2);
  m << e[0].at(p, q), e[1].at(p, q), e[2].at(p, q), e[3].at(p, q);
  return m;
}

}  // namespace

CMat integrability_matrix(const Jet& jet) {
  if (jet.order() < 2)
    throw std::invalid_argument("integrability_matrix: order-2 jet required");
  const auto e = d_entry_jets(jet);
  const CMat D = entry_values(e, 0, 0);
  const CMat Dzb = entry_values(e, 0, 1);
  // dz(D*) = (dzb D)^adjoint entrywise
  return Dzb + Dzb.adjoint() + D * D.adjoint() - D.adjoint() * D;
}

CMat integrability_angle_matrix(const Jet& jet) {
  const HorizontalDiff h = horizontal_diff(jet);
  const CVec jhzb = j_map(h.dzb);
  const double nz = h.dz.squaredNorm();
  const double nzb = h.dzb.squaredNorm();
  CMat m(2, 2);
  m(0, 0) = nz - nzb;
  m(0, 1) = 2.0 * herm_inner(jhzb, h.dz);
  m(1, 0) = 2.0 * herm_inner(h.dz, jhzb);
  m(1, 1) = nzb - nz;
  return m;
}

double integrability_residual(const SurfaceMap& lift, const GridSpec& grid, Exec exec) {
  auto f = [&lift](double x, double y) -> std::optional<double> {
    return max_abs(integrability_matrix(jet_at(lift, x, y, 2)));
  };
  return grid_max(grid, f, exec).max_value;
}

GaugeField gauge_field(const SurfaceMap& lift) {
  return GaugeField{[lift](double x, double y) {
    return compute_D(jet_at(lift, x, y, 1));
  }};
}

CMat project_su2(const CMat& T) {
  Eigen::JacobiSVD<CMat> svd(T, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMat U = svd.matrixU() * svd.matrixV().adjoint();
  const Cplx det = U(0, 0) * U(1, 1) - U(0, 1) * U(1, 0);
  return U / std::sqrt(det);
}

TransportResult integrate_gauge(const GaugeField& field, const std::vector<PointXY>& path,
                                const GaugeFrame& T0, double step_length) {
  if (path.size() < 1) throw std::invalid_argument("integrate_gauge: empty path");
  if (step_length <= 0) throw std::invalid_argument("integrate_gauge: step underflow");
  const CMat I = CMat::Identity(2, 2);
  if (max_abs(CMat(T0.T.adjoint() * T0.T - I)) > 1e-8 ||
      std::abs(T0.T(0, 0) * T0.T(1, 1) - T0.T(0, 1) * T0.T(1, 0) - Cplx(1)) > 1e-8)
    throw std::invalid_argument("integrate_gauge: T0 not special unitary");

  TransportResult result;
  CMat T = T0.T;
  auto rhs = [&field](Cplx z, Cplx dz, const CMat& Tc) {
    const CMat D = field.D(z.real(), z.imag());
    return CMat(-(D * dz - D.adjoint() * std::conj(dz)) * Tc);
  };
  for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const Cplx a(path[seg].x, path[seg].y);
    const Cplx b(path[seg + 1].x, path[seg + 1].y);
    const double len = std::abs(b - a);
    if (len == 0.0) continue;
    const long nsteps = std::max<long>(1, static_cast<long>(std::ceil(len / step_length)));
    const Cplx dz = (b - a) / static_cast<double>(nsteps);
    for (long i = 0; i < nsteps; ++i) {
      const Cplx z = a + dz * static_cast<double>(i);
      const CMat k1 = rhs(z, dz, T);
      const CMat k2 = rhs(z + 0.5 * dz, dz, T + 0.5 * k1);
      const CMat k3 = rhs(z + 0.5 * dz, dz, T + 0.5 * k2);
      const CMat k4 = rhs(z + dz, dz, T + k3);
      T = T + (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
      result.max_unitary_drift =
          std::max(result.max_unitary_drift, max_abs(CMat(T.adjoint() * T - I)));
      result.max_det_drift = std::max(
          result.max_det_drift,
          std::abs(T(0, 0) * T(1, 1) - T(0, 1) * T(1, 0) - Cplx(1)));
      T = project_su2(T);
      ++result.steps;
    }
  }
  result.frame = GaugeFrame{T, path.back()};
  return result;
}

TransportResult loop_transport(const SurfaceMap& lift, const Cell& cell,
                               double step_length) {
  const std::vector<PointXY> loop = {{cell.x0, cell.y0}, {cell.x1, cell.y0},
                                     {cell.x1, cell.y1}, {cell.x0, cell.y1},
                                     {cell.x0, cell.y0}};
  return integrate_gauge(gauge_field(lift), loop,
                         GaugeFrame{CMat::Identity(2, 2), loop.front()}, step_length);
}

namespace {

// Lift gauged by the transported frame: s~ = (s, js) T, first column.
// T is integrated along L-paths from the base point and cached; its
// derivatives come from the transport equation itself,
//   dz T = -D T,  dzb T = D* T,
// so order-2 jets of s~ need order-2 jets of the source lift only.
class HorizontalizedProvider : public JetProvider {
 public:
  HorizontalizedProvider(SurfaceMap base, PointXY origin, double step_length)
      : base_(std::move(base)), origin_(origin), step_length_(step_length) {}

  int dim() const override { return base_.dim(); }
  int max_order() const override { return 2; }
  ProviderKind kind() const override { return ProviderKind::FiniteDifference; }

  VecJet raw_jets(double x, double y, int order) const override {
    if (order > 2)
      throw std::invalid_argument("horizontalized lift: jets available to order 2");
    const Jet base = jet_at(base_, x, y, std::max(order, 1));
    const CMat Tval = frame_at(x, y);

    // entry jets of T to the requested order
    ScalarJet t00(order), t10(order);
    std::map<std::pair<int, int>, CMat> tj;
    tj[{0, 0}] = Tval;
    if (order >= 1) {
      const CMat D = compute_D(base);
      tj[{1, 0}] = -D * Tval;
      tj[{0, 1}] = D.adjoint() * Tval;
      if (order >= 2) {
        const auto e = d_entry_jets(base);
        const CMat Dz = entry_values(e, 1, 0);
        const CMat Dzb = entry_values(e, 0, 1);
        tj[{2, 0}] = -Dz * Tval - D * tj[{1, 0}];
        tj[{1, 1}] = -Dzb * Tval - D * tj[{0, 1}];
        // dzb(D*) = (dz D)^adjoint entrywise
        tj[{0, 2}] = Dz.adjoint() * Tval + D.adjoint() * tj[{0, 1}];
      }
    }
    for (const auto& [pq, m] : tj) {
      t00.at(pq.first, pq.second) = m(0, 0);
      t10.at(pq.first, pq.second) = m(1, 0);
    }
    const VecJet s = base.jets.truncated(order);
    return vj_scale(t00, s) + vj_scale(t10, vj_j(s));
  }

 private:
  CMat frame_at(double x, double y) const {
    const std::pair<double, double> key{x, y};
    {
      std::lock_guard<std::mutex> lock(mutex_);
      auto it = cache_.find(key);
      if (it != cache_.end()) return it->second;
    }
    const std::vector<PointXY> path = {origin_, {x, origin_.y}, {x, y}};
    const CMat T = integrate_gauge(gauge_field(base_), path,
                                   GaugeFrame{CMat::Identity(2, 2), origin_},
                                   step_length_)
                       .frame.T;
    std::lock_guard<std::mutex> lock(mutex_);
    cache_[key] = T;
    return T;
  }

  SurfaceMap base_;
  PointXY origin_;
  double step_length_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<double, double>, CMat> cache_;
};

}  // namespace

SurfaceMap horizontalize(const SurfaceMap& lift, PointXY base_point,
                         const GridSpec& probe_grid, HorizontalizeOptions options) {
  const double residual = integrability_residual(lift, probe_grid);
  if (residual > options.integrability_tol)
    throw std::domain_error("horizontalize: non-integrable gauge field, residual " +
                            std::to_string(residual));
  const double step =
      options.step_length > 0 ? options.step_length : 1e-3 * probe_grid.cell.min_extent();
  auto provider = std::make_shared<HorizontalizedProvider>(lift, base_point, step);
  return SurfaceMap{provider, lift.cell};
}

}  // namespace hpsurf
