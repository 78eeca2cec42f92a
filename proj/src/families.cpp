#include "hpsurf/families.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace hpsurf {

using std::numbers::pi;

void ExponentialFamily::validate() const {
  if (thetas.empty() || thetas.size() != weights.size())
    throw std::invalid_argument("ExponentialFamily: thetas/weights size mismatch");
  if (std::abs(thetas[0]) > 1e-15)
    throw std::invalid_argument("ExponentialFamily: theta_0 must be 0");
  for (size_t k = 1; k < thetas.size(); ++k)
    if (!(thetas[k] > thetas[k - 1] && thetas[k] < 2 * pi))
      throw std::invalid_argument("ExponentialFamily: thetas must be strictly increasing in (0, 2pi)");
  double sum = 0;
  for (double r : weights) {
    if (!(r > 0)) throw std::invalid_argument("ExponentialFamily: weights must be positive");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("ExponentialFamily: weights must sum to 1");
}

Cplx ExponentialFamily::exponent_sum() const {
  Cplx c(0);
  for (size_t k = 0; k < thetas.size(); ++k)
    c += weights[k] * std::exp(Cplx(0, thetas[k]));
  return c;
}

SurfaceMap make_exponential(const ExponentialFamily& family) {
  family.validate();
  const int m = family.top_index();
  std::vector<ExponentialLift::Slot> slots(2 * (m + 1), {Cplx(0), Cplx(0)});
  for (int k = 0; k <= m; ++k)
    slots[2 * k] = {std::sqrt(family.weights[k]), std::exp(Cplx(0, family.thetas[k]))};
  return SurfaceMap{std::make_shared<ExponentialLift>(std::move(slots)),
                    default_cell(m)};
}

Cell default_cell(int n) {
  const double L = 2 * pi / (n + 1);
  return Cell{0.0, L, 0.0, L};
}

ClassifiedPair make_classified(const ClassifiedSpec& spec) {
  const int n = spec.n;
  if (n < 1) throw std::invalid_argument("make_classified: n >= 1 required");
  const bool clifford = spec.variant == Variant::Clifford;
  if (clifford && spec.lift != LiftVariant::InterleavedZeros)
    throw std::invalid_argument("make_classified: Clifford pairs with InterleavedZeros only");
  if (!clifford && spec.lift == LiftVariant::InterleavedZeros)
    throw std::invalid_argument("make_classified: Companion requires a full lift variant");
  if (spec.lift == LiftVariant::FullEvenN && n % 2 != 0)
    throw std::invalid_argument("make_classified: FullEvenN requires even n");

  std::vector<ExponentialLift::Slot> slots(2 * n + 2, {Cplx(0), Cplx(0)});
  if (spec.lift == LiftVariant::InterleavedZeros) {
    const double xi = 1.0 / std::sqrt(n + 1.0);
    for (int k = 0; k <= n; ++k)
      slots[2 * k] = {xi, std::exp(Cplx(0, 2 * pi * k / (n + 1)))};
  } else if (spec.lift == LiftVariant::FullSigned) {
    const double xi = 1.0 / std::sqrt(2.0 * n + 2.0);
    for (int t = 0; t <= n; ++t) {
      slots[2 * t] = {xi, std::exp(Cplx(0, pi * t / (n + 1)))};
      const double sign = ((n + 1 - t) % 2 == 0) ? 1.0 : -1.0;
      slots[2 * t + 1] = {sign * xi, std::exp(Cplx(0, pi * (n + 1 + t) / (n + 1)))};
    }
  } else {
    if (std::abs(std::abs(spec.phase) - 1.0) > 1e-12)
      throw std::invalid_argument("make_classified: phase must be a unit complex number");
    if (!(spec.weight_ratio > 0) || std::abs(spec.weight_ratio - 1.0) < 1e-9)
      throw std::invalid_argument("make_classified: weight_ratio must be positive and != 1");
    // weights alternate between r0 (even exponent index) and r1, (n+1)(r0+r1)=1
    const double r1 = 1.0 / ((n + 1.0) * (1.0 + spec.weight_ratio));
    const double r0 = spec.weight_ratio * r1;
    auto xi = [&](int j) { return std::sqrt(j % 2 == 0 ? r0 : r1); };
    for (int t = 0; t <= n; ++t) {
      slots[2 * t] = {xi(t), std::exp(Cplx(0, pi * t / (n + 1)))};
      const double sign = (t % 2 == 0) ? -1.0 : 1.0;  // (-1)^{t+1}
      slots[2 * t + 1] = {sign * spec.phase * xi(n + 1 + t),
                          std::exp(Cplx(0, pi * (n + 1 + t) / (n + 1)))};
    }
  }
  auto provider = std::make_shared<ExponentialLift>(std::move(slots));
  const SurfaceMap map{provider, default_cell(n)};
  return ClassifiedPair{map, map};
}

namespace {

// Hankel matrix-pencil recovery of nodes/weights from mu_k = sum r_j a_j^k.
struct PronyResult {
  std::vector<Cplx> nodes;
  std::vector<Cplx> weights;
  double residual = 0.0;
};

PronyResult prony(const std::vector<Cplx>& mu, double tol) {
  const int L = static_cast<int>(mu.size() - 1) / 2;
  CMat H0(L, L), H1(L, L);
  for (int i = 0; i < L; ++i)
    for (int j = 0; j < L; ++j) {
      H0(i, j) = mu[i + j];
      H1(i, j) = mu[i + j + 1];
    }
  Eigen::JacobiSVD<CMat> svd(H0, Eigen::ComputeFullU | Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < L; ++i)
    if (svd.singularValues()[i] > tol * std::max(1.0, svd.singularValues()[0])) ++rank;
  if (rank == 0) throw std::invalid_argument("congruence_invariants: zero moment sequence");
  const CMat U = svd.matrixU().leftCols(rank);
  const CMat V = svd.matrixV().leftCols(rank);
  const CVec S = svd.singularValues().head(rank).cast<Cplx>();
  CMat pencil = U.adjoint() * H1 * V;
  for (int i = 0; i < rank; ++i) pencil.col(i) /= S[i];
  Eigen::ComplexEigenSolver<CMat> es(pencil.transpose());

  PronyResult out;
  out.nodes.assign(es.eigenvalues().data(), es.eigenvalues().data() + rank);
  // weights by Vandermonde least squares on the moment sequence
  CMat Vm(mu.size(), rank);
  for (size_t k = 0; k < mu.size(); ++k)
    for (int j = 0; j < rank; ++j) Vm(k, j) = std::pow(out.nodes[j], static_cast<int>(k));
  Eigen::Map<const CVec> rhs(mu.data(), mu.size());
  const CVec w = Vm.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  out.weights.assign(w.data(), w.data() + rank);
  out.residual = (Vm * w - rhs).cwiseAbs().maxCoeff();
  return out;
}

double canonical_arg(Cplx z) {
  double a = std::arg(z);
  if (a < -1e-12) a += 2 * pi;
  if (a < 0) a = 0;
  return a;
}

}  // namespace

InvariantSet congruence_invariants(const SurfaceMap& surface, const GridSpec& grid,
                                   double tol) {
  const int dim = surface.dim();
  const int K = 4 * dim + 1;
  if (K > surface.provider->max_order())
    throw std::invalid_argument("congruence_invariants: exponential-jet provider required");

  auto moments = [&](double x, double y) {
    const Jet jet = jet_at(surface, x, y, K);
    std::vector<Cplx> mu(K + 1);
    for (int k = 0; k <= K; ++k) mu[k] = herm_inner(jet.d(k, 0), jet.value());
    return mu;
  };
  const PointXY p0 = grid.point(0);
  const PointXY p1 = grid.point(grid.size() - 1);
  const PronyResult a = prony(moments(p0.x, p0.y), tol);
  const PronyResult b = prony(moments(p1.x, p1.y), tol);
  if (a.residual > tol || b.residual > tol)
    throw std::invalid_argument("congruence_invariants: non-exponential input");
  // node sets must agree between sample points
  for (const Cplx& na : a.nodes) {
    double best = 1e9;
    for (const Cplx& nb : b.nodes) best = std::min(best, std::abs(na - nb));
    if (best > 1e-6)
      throw std::invalid_argument("congruence_invariants: non-exponential input");
  }

  InvariantSet inv;
  std::vector<std::pair<Cplx, double>> raw;
  for (size_t i = 0; i < a.nodes.size(); ++i) {
    if (std::abs(a.weights[i].imag()) > 1e-6 || a.weights[i].real() < -1e-9)
      throw std::invalid_argument("congruence_invariants: non-exponential input");
    raw.push_back({a.nodes[i], a.weights[i].real()});
  }
  std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) {
    return canonical_arg(x.first) < canonical_arg(y.first);
  });
  for (const auto& [node, weight] : raw) {
    inv.raw_nodes.push_back(node);
    inv.raw_weights.push_back(weight);
  }

  // merge antipodal pairs {a, -a}; keep the representative with arg in [0, pi)
  std::vector<bool> used(raw.size(), false);
  std::vector<std::pair<Cplx, double>> merged;
  for (size_t i = 0; i < raw.size(); ++i) {
    if (used[i]) continue;
    Cplx node = raw[i].first;
    double weight = raw[i].second;
    for (size_t j = i + 1; j < raw.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(raw[j].first + node) < 1e-9) {
        weight += raw[j].second;
        used[j] = true;
        if (canonical_arg(raw[j].first) < pi - 1e-12 &&
            canonical_arg(node) >= pi - 1e-12)
          node = raw[j].first;
        break;
      }
    }
    merged.push_back({node, weight});
  }
  std::sort(merged.begin(), merged.end(), [](const auto& x, const auto& y) {
    return canonical_arg(x.first) < canonical_arg(y.first);
  });
  for (const auto& [node, weight] : merged) {
    inv.exponents.push_back(node);
    inv.weights.push_back(weight);
  }
  return inv;
}

bool invariants_close(const InvariantSet& a, const InvariantSet& b, double tol) {
  if (a.exponents.size() != b.exponents.size()) return false;
  for (size_t i = 0; i < a.exponents.size(); ++i) {
    if (std::abs(a.exponents[i] - b.exponents[i]) > tol) return false;
    if (std::abs(a.weights[i] - b.weights[i]) > tol) return false;
  }
  return true;
}

}  // namespace hpsurf
