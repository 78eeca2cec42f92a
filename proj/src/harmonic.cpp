#include "hpsurf/harmonic.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace hpsurf {

bool HarmonicSequence::has(int k) const {
  if (k >= 0) return !(terminated_fw && k >= term_index_fw) && k <= depth;
  return !(terminated_bw && -k >= term_index_bw) && -k <= depth;
}

Cplx HarmonicSequence::gram(int i, int j) const {
  const CVec& a = frame(i);
  const CVec& b = frame(j);
  return herm_inner(a, b) / (a.norm() * b.norm());
}

Cplx HarmonicSequence::jgram(int i, int j) const {
  const CVec& a = frame(i);
  const CVec& b = frame(j);
  return herm_inner(a, j_map(b)) / (a.norm() * b.norm());
}

namespace {

// One recursion step on jets: next = d(cur) - (<d(cur),cur>/|cur|^2) cur,
// rescaled by a constant so magnitudes stay O(1).
bool recursion_step(const VecJet& cur, bool forward, VecJet& next, double& raw_norm) {
  const VecJet d = forward ? vj_dz(cur) : vj_dzb(cur);
  const ScalarJet den = vj_inner(cur, cur);
  if (!(den.value().real() > kDegenerateThreshold)) return false;
  const ScalarJet coef = vj_inner(d, cur) * sj_pow(den, -1.0);
  VecJet candidate = d - vj_scale(coef, cur);
  raw_norm = candidate.value().norm();
  if (raw_norm * raw_norm < kDegenerateThreshold) return false;
  const double scale = 1.0 / raw_norm;
  VecJet scaled(candidate.dim(), candidate.order());
  for (int p = 0; p <= candidate.order(); ++p)
    for (int q = 0; q + p <= candidate.order(); ++q)
      scaled.at(p, q) = scale * candidate.at(p, q);
  next = scaled;
  return true;
}

}  // namespace

HarmonicSequence build_sequence(const SurfaceMap& lift, double x, double y, int depth) {
  if (depth < 1) throw std::invalid_argument("build_sequence: depth >= 1 required");
  const int order = depth + 1;
  if (order > lift.provider->max_order())
    throw std::invalid_argument("build_sequence: provider cannot supply the jet order");
  const Jet base = jet_at(lift, x, y, order);

  HarmonicSequence seq;
  seq.x = x;
  seq.y = y;
  seq.depth = depth;
  seq.frames.assign(2 * depth + 1, CVec::Zero(base.dim()));
  seq.norms.assign(2 * depth + 1, 0.0);
  seq.frames[depth] = base.value();
  seq.norms[depth] = 1.0;

  VecJet cur = base.jets;
  for (int k = 0; k < depth; ++k) {
    VecJet next;
    double raw = 0;
    if (!recursion_step(cur, true, next, raw)) {
      seq.terminated_fw = true;
      seq.term_index_fw = k + 1;
      break;
    }
    seq.frames[depth + k + 1] = next.value();
    seq.norms[depth + k + 1] = raw;
    cur = next;
  }
  cur = base.jets;
  for (int k = 0; k < depth; ++k) {
    VecJet next;
    double raw = 0;
    if (!recursion_step(cur, false, next, raw)) {
      seq.terminated_bw = true;
      seq.term_index_bw = k + 1;
      break;
    }
    seq.frames[depth - k - 1] = next.value();
    seq.norms[depth - k - 1] = raw;
    cur = next;
  }
  return seq;
}

IsotropyResult isotropy_order(const SurfaceMap& lift, const GridSpec& grid, int depth,
                              double tol, Exec exec) {
  // max |gram(k,0)| over the grid for each k; termination poisons the run.
  std::vector<double> maxg(depth + 1, 0.0);
  bool terminated = false;
  int term_index = depth + 1;
  for (int idx = 0; idx < grid.size(); ++idx) {
    const PointXY p = grid.point(idx);
    const HarmonicSequence seq = build_sequence(lift, p.x, p.y, depth);
    if (seq.terminated_fw) {
      terminated = true;
      term_index = std::min(term_index, seq.term_index_fw);
      continue;
    }
    for (int k = 1; k <= depth; ++k)
      maxg[k] = std::max(maxg[k], std::abs(seq.gram(k, 0)));
  }
  (void)exec;
  IsotropyResult r;
  if (terminated) {
    r.full = false;
    r.terminating_index = term_index;
    return r;
  }
  for (int k = 1; k <= depth; ++k) {
    if (maxg[k] > tol) {
      r.order = k - 1;
      r.witness = maxg[k];
      return r;
    }
  }
  r.order = depth;
  r.at_least = true;
  return r;
}

CMat level_projector(const HarmonicSequence& seq, int k) {
  const CVec a = seq.frame(k);
  const CVec b = j_map(seq.frame(-k));
  CMat basis(a.size(), 2);
  basis.col(0) = a;
  basis.col(1) = b;
  const Eigen::HouseholderQR<CMat> qr(basis);
  CMat Q = qr.householderQ() * CMat::Identity(a.size(), 2);
  return Q * Q.adjoint();
}

namespace {

CMat projector_field(const SurfaceMap& lift, double x, double y, int depth, int k) {
  const HarmonicSequence seq = build_sequence(lift, x, y, depth);
  if ((k > 0 && seq.terminated_fw && k >= seq.term_index_fw) ||
      (k > 0 && seq.terminated_bw && k >= seq.term_index_bw))
    throw degenerate_point("prop35: sequence terminated");
  return level_projector(seq, k);
}

// d_z of the level-k projector by central differences, one Richardson level.
CMat dz_projector(const SurfaceMap& lift, double x, double y, int depth, int k,
                  double h) {
  auto P = [&](double xx, double yy) { return projector_field(lift, xx, yy, depth, k); };
  auto estimate = [&](double hh) {
    const CMat dx = (P(x + hh, y) - P(x - hh, y)) / (2 * hh);
    const CMat dy = (P(x, y + hh) - P(x, y - hh)) / (2 * hh);
    return CMat(0.5 * (dx - Cplx(0, 1) * dy));
  };
  const CMat coarse = estimate(h);
  const CMat fine = estimate(h / 2);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

CheckEntry check_prop35(const SurfaceMap& lift, const GridSpec& grid, int depth,
                        double tol, Exec exec) {
  const CMat J = j_matrix(lift.dim());
  auto f = [&](double x, double y) -> std::optional<double> {
    const HarmonicSequence seq = build_sequence(lift, x, y, depth);
    if (seq.terminated_fw || seq.terminated_bw)
      throw degenerate_point("prop35: sequence terminated");
    double r = 0.0;
    for (int k = 0; k <= depth; ++k)
      for (int q = k - 2; q <= k; ++q) {
        if (q < 0 || q > depth) continue;
        r = std::max(r, std::abs(seq.jgram(k, -q)));
        r = std::max(r, std::abs(herm_inner(j_map(seq.frame(-k)), seq.frame(q)) /
                                 (seq.frame(-k).norm() * seq.frame(q).norm())));
      }
    for (int k = 0; k + 1 <= depth; ++k) {
      // propagated bundle: image of (I-P) dzP P against span{f_{k+1}, j f_{-(k+1)}}
      const CMat P = level_projector(seq, k);
      const CMat dP = dz_projector(lift, x, y, depth, k, 1e-4);
      const CMat I = CMat::Identity(lift.dim(), lift.dim());
      const CMat M = (I - P) * dP * P;
      Eigen::JacobiSVD<CMat> svd(M, Eigen::ComputeThinU);
      const CMat Q = svd.matrixU().leftCols(2);
      const CMat propagated = Q * Q.adjoint();
      r = std::max(r, max_abs(propagated - level_projector(seq, k + 1)));
      // j-symmetry of the negative levels
      const CMat Pk = level_projector(seq, k + 1);
      CMat basis(lift.dim(), 2);
      basis.col(0) = seq.frame(-(k + 1));
      basis.col(1) = j_map(seq.frame(k + 1));
      const Eigen::HouseholderQR<CMat> qr(basis);
      const CMat Qb = qr.householderQ() * CMat::Identity(lift.dim(), 2);
      r = std::max(r, max_abs(Qb * Qb.adjoint() - J * Pk.conjugate() * J.adjoint()));
    }
    return r;
  };
  const GridReduction red = grid_max(grid, f, exec);
  CheckEntry e;
  e.name = "prop35";
  e.max_residual = red.max_value;
  e.tolerance = tol;
  e.pass = red.any() && red.max_value <= tol;
  e.worst = red.argmax >= 0 ? grid.point(red.argmax) : PointXY{};
  e.excluded = red.excluded;
  e.provider = lift.provider->kind() == ProviderKind::Exact ? "exact" : "finite-difference";
  return e;
}

int lift_span_rank(const SurfaceMap& lift, const GridSpec& grid, double svtol) {
  CMat samples(grid.size(), lift.dim());
  for (int idx = 0; idx < grid.size(); ++idx) {
    const PointXY p = grid.point(idx);
    samples.row(idx) = jet_at(lift, p.x, p.y, 0).value().transpose();
  }
  Eigen::JacobiSVD<CMat> svd(samples);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > svtol) ++rank;
  return rank;
}

}  // namespace hpsurf
