#include "hpsurf/scan.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace hpsurf {

using std::numbers::pi;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

namespace {

// Weights from the moment conditions sum_j a_j^k r_j = 0 (k = 1..n) together
// with sum r_j = 1, as the solution closest to uniform weights.
struct WeightSolve {
  bool ok = false;
  std::vector<double> weights;
};

WeightSolve solve_weights(const std::vector<double>& thetas, int n) {
  const int m = static_cast<int>(thetas.size()) - 1;
  RMat A(2 * n + 1, m + 1);
  RVec b = RVec::Zero(2 * n + 1);
  for (int j = 0; j <= m; ++j) A(0, j) = 1.0;
  b[0] = 1.0;
  for (int k = 1; k <= n; ++k)
    for (int j = 0; j <= m; ++j) {
      A(2 * k - 1, j) = std::cos(k * thetas[j]);
      A(2 * k, j) = std::sin(k * thetas[j]);
    }
  const RVec c = RVec::Constant(m + 1, 1.0 / (m + 1));
  // minimize ||r - c|| subject to A r = b
  const RMat AAt = A * A.transpose();
  const RVec lambda = AAt.ldlt().solve(b - A * c);
  const RVec r = c + A.transpose() * lambda;
  WeightSolve out;
  if ((A * r - b).cwiseAbs().maxCoeff() > 1e-10) return out;
  for (int j = 0; j <= m; ++j)
    if (!(r[j] > 1e-6)) return out;
  out.ok = true;
  out.weights.assign(r.data(), r.data() + m + 1);
  return out;
}

std::vector<Cplx> exponents_of(const std::vector<double>& thetas) {
  std::vector<Cplx> a;
  a.reserve(thetas.size());
  for (double t : thetas) a.push_back(std::exp(Cplx(0, t)));
  return a;
}

Cplx cpow(Cplx z, int k) {
  Cplx r(1);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

}  // namespace

ScanReport constraint_scan(const ScanParams& params) {
  const int n = params.n;
  const int m = params.m;
  if (n < 1 || n > 3 || m < 1 || m > 2 * n + 1)
    throw std::invalid_argument("constraint_scan: desk scale is 1 <= n <= 3, m <= 2n+1");

  ScanReport report;
  report.n = n;
  report.m = m;

  // --- stage A: parameters satisfying the moment conditions ---
  std::mt19937_64 rng(params.seed);
  std::uniform_real_distribution<double> unif(0.05, 2 * pi - 0.05);
  auto try_thetas = [&](const std::vector<double>& th) {
    const WeightSolve w = solve_weights(th, n);
    if (!w.ok) return false;
    report.params_feasible = true;
    report.thetas = th;
    report.weights = w.weights;
    return true;
  };
  if (params.thetas.has_value()) {
    ++report.attempts;
    try_thetas(*params.thetas);
  } else if (m == 1 && n == 1) {
    // r_0 + e^{i theta_1} r_1 = 0 with positive weights forces the antipode.
    ++report.attempts;
    try_thetas({0.0, pi});
  } else {
    for (int t = 0; t < params.trials && !report.params_feasible; ++t) {
      ++report.attempts;
      std::vector<double> th(m + 1, 0.0);
      for (int j = 1; j <= m; ++j) th[j] = unif(rng);
      std::sort(th.begin() + 1, th.end());
      bool distinct = true;
      for (int j = 1; j <= m; ++j)
        if (th[j] - th[j - 1] < 1e-3) distinct = false;
      if (!distinct) continue;
      try_thetas(th);
    }
    if (!report.params_feasible && m == 2 * n + 1) {
      // canonical full-index draw: the (2n+2)-nd roots of unity
      std::vector<double> th(m + 1);
      for (int j = 0; j <= m; ++j) th[j] = pi * j / (n + 1);
      ++report.attempts;
      try_thetas(th);
    }
  }
  if (!report.params_feasible) return report;

  const std::vector<Cplx> a = exponents_of(report.thetas);
  std::vector<double> xi(report.weights.size());
  for (size_t j = 0; j < xi.size(); ++j) xi[j] = std::sqrt(report.weights[j]);

  // --- stage B: grouped linear system on w_{ij}, i < j <= m ---
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) pairs.push_back({i, j});
  const int P = static_cast<int>(pairs.size());

  // cluster pair exponents a_i + a_j
  std::vector<Cplx> group_value;
  std::vector<int> group_of(P, -1);
  for (int e = 0; e < P; ++e) {
    const Cplx v = a[pairs[e].first] + a[pairs[e].second];
    for (size_t g = 0; g < group_value.size(); ++g)
      if (std::abs(group_value[g] - v) < 1e-9) group_of[e] = static_cast<int>(g);
    if (group_of[e] < 0) {
      group_of[e] = static_cast<int>(group_value.size());
      group_value.push_back(v);
    }
  }
  const int G = static_cast<int>(group_value.size());
  CMat A2 = CMat::Zero(2 * n * G, P);
  for (int e = 0; e < P; ++e) {
    const auto [i, j] = pairs[e];
    for (int k = 1; k <= n; ++k) {
      const int row = 2 * (n * group_of[e] + (k - 1));
      A2(row, e) = xi[i] * xi[j] * (cpow(a[j], k) - cpow(a[i], k));
      A2(row + 1, e) =
          xi[i] * xi[j] * (cpow(std::conj(a[j]), k) - cpow(std::conj(a[i]), k));
    }
  }
  Eigen::JacobiSVD<CMat> svd(A2, Eigen::ComputeFullV);
  int rank = 0;
  const double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > 1e-10 * std::max(1.0, smax)) ++rank;
  const CMat null_basis = svd.matrixV().rightCols(P - rank);
  report.topleft_block_zero = true;
  for (int e = 0; e < P; ++e) {
    const double row_norm = null_basis.rows() > 0 ? null_basis.row(e).norm() : 0.0;
    const bool forced = P - rank == 0 || row_norm < params.tol;
    report.entries.push_back({pairs[e].first, pairs[e].second, forced});
    if (!forced) report.topleft_block_zero = false;
  }
  if (m == 2 * n + 1 && report.topleft_block_zero)
    report.unitary_feasible = false;  // W would vanish identically

  // --- stage C: isotropy-closure relations for the full index range ---
  if (m == 2 * n + 1) {
    report.closure.ran = true;
    const int N = n + 1;
    CMat M = CMat::Zero(2 * N, 1 + N);
    CVec rhs = CVec::Zero(2 * N);
    for (int t = 0; t < N; ++t) {
      const Cplx an1 = cpow(a[t], n + 1);
      M(2 * t, 0) = -xi[t];
      M(2 * t, 1 + t) = -xi[N + t];
      rhs[2 * t] = -an1 * xi[t];
      M(2 * t + 1, 0) = xi[N + t];
      M(2 * t + 1, 1 + t) = -xi[t];
      rhs[2 * t + 1] = -an1 * xi[N + t];
    }
    const CVec sol = M.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
    const double res = (M * sol - rhs).cwiseAbs().maxCoeff();
    report.closure.feasible = res < 1e-8;
    report.closure.a_coef = sol[0];
    std::vector<Cplx> x(sol.data() + 1, sol.data() + 1 + N);
    report.closure.b_abs = std::abs(x[0]);
    report.closure.alternating = report.closure.feasible;
    for (int t = 0; t < N; ++t) {
      const Cplx ratio = x[t] / x[0];
      report.closure.w_ratio.push_back(ratio);
      const double expect = (t % 2 == 0) ? 1.0 : -1.0;
      if (std::abs(ratio - expect) > 1e-6) report.closure.alternating = false;
    }
    report.closure.exponents_are_roots = true;
    for (int j = 0; j <= m; ++j)
      if (std::abs(cpow(a[j], 2 * n + 2) - Cplx(1)) > 1e-9)
        report.closure.exponents_are_roots = false;
  }
  return report;
}

CMat vandermonde_system(const std::vector<Cplx>& nodes, int q) {
  const int p1 = static_cast<int>(nodes.size());
  CMat M(2 * (q + 1), p1);
  for (int c = 0; c < p1; ++c) {
    for (int t = 0; t <= q; ++t) {
      M(t, c) = cpow(nodes[c], 2 * t + 1);
      M(q + 1 + t, c) = cpow(std::conj(nodes[c]), 2 * t + 1);
    }
  }
  return M;
}

bool full_column_rank(const CMat& M, double tol) {
  Eigen::JacobiSVD<CMat> svd(M);
  const auto& sv = svd.singularValues();
  if (sv.size() < M.cols()) return false;
  return sv[M.cols() - 1] > tol;
}

}  // namespace hpsurf
