#include "hpsurf/core.hpp"

#include <Eigen/Eigenvalues>
#include <random>

namespace hpsurf {

Cplx herm_inner(const CVec& v, const CVec& w) {
  if (v.size() != w.size())
    throw std::invalid_argument("herm_inner: length mismatch");
  // Eigen's dot conjugates its receiver, so w.dot(v) = sum_a v_a conj(w_a).
  return w.dot(v);
}

CMat j_matrix(int dim) {
  if (dim <= 0 || dim % 2 != 0)
    throw std::invalid_argument("j_matrix: dimension must be positive even");
  CMat J = CMat::Zero(dim, dim);
  for (int t = 0; t < dim / 2; ++t) {
    J(2 * t, 2 * t + 1) = -1.0;
    J(2 * t + 1, 2 * t) = 1.0;
  }
  return J;
}

CVec j_map(const CVec& v) {
  const auto dim = v.size();
  if (dim <= 0 || dim % 2 != 0)
    throw std::invalid_argument("j_map: length must be positive even");
  CVec out(dim);
  for (Eigen::Index t = 0; t < dim / 2; ++t) {
    out[2 * t] = -std::conj(v[2 * t + 1]);
    out[2 * t + 1] = std::conj(v[2 * t]);
  }
  return out;
}

double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

bool is_symplectic(const CMat& U, double tol) {
  if (U.rows() != U.cols() || U.rows() % 2 != 0 || U.rows() == 0)
    throw std::invalid_argument("is_symplectic: square even-dimensional matrix required");
  const int dim = static_cast<int>(U.rows());
  const CMat I = CMat::Identity(dim, dim);
  const CMat J = j_matrix(dim);
  if (max_abs(U.adjoint() * U - I) > tol) return false;
  return max_abs(U * J * U.transpose() - J) <= tol;
}

HPoint twistor_project(const CVec& v) {
  const double n2 = v.squaredNorm();
  if (n2 < kDegenerateThreshold)
    throw std::invalid_argument("twistor_project: zero vector");
  const CVec s = v / std::sqrt(n2);
  const CVec js = j_map(s);
  return HPoint{s * s.adjoint() + js * js.adjoint()};
}

double hpoint_distance(const HPoint& p, const HPoint& q) {
  if (p.dim() != q.dim())
    throw std::invalid_argument("hpoint_distance: dimension mismatch");
  return max_abs(p.projector - q.projector);
}

CMat random_symplectic(int half_dim, std::uint64_t seed) {
  // Quaternionic anti-Hermitian X (as 2x2 complex blocks), then exp(X).
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 0.5);
  const int dim = 2 * half_dim;
  CMat X = CMat::Zero(dim, dim);
  auto block = [](Cplx alpha, Cplx beta) {
    Eigen::Matrix2cd b;
    b << alpha, -std::conj(beta), beta, std::conj(alpha);
    return b;
  };
  for (int r = 0; r < half_dim; ++r) {
    for (int c = r; c < half_dim; ++c) {
      if (r == c) {
        // purely imaginary quaternion on the diagonal
        const Cplx alpha(0.0, g(rng));
        const Cplx beta(g(rng), g(rng));
        X.block<2, 2>(2 * r, 2 * r) = block(alpha, beta);
      } else {
        const Cplx alpha(g(rng), g(rng));
        const Cplx beta(g(rng), g(rng));
        const Eigen::Matrix2cd b = block(alpha, beta);
        X.block<2, 2>(2 * r, 2 * c) = b;
        X.block<2, 2>(2 * c, 2 * r) = -b.adjoint();
      }
    }
  }
  // X is anti-Hermitian, so iX is Hermitian: exp(X) = V diag(exp(-i mu)) V*.
  Eigen::SelfAdjointEigenSolver<CMat> es(Cplx(0, 1) * X);
  CVec phases(dim);
  for (int k = 0; k < dim; ++k)
    phases[k] = std::exp(Cplx(0, -es.eigenvalues()[k]));
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace hpsurf
