#include "hpsurf/jet.hpp"

#include <cmath>

namespace hpsurf {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ScalarJet ScalarJet::constant(Cplx v, int order) {
  ScalarJet s(order);
  s.at(0, 0) = v;
  return s;
}

ScalarJet ScalarJet::truncated(int order) const {
  ScalarJet out(order);
  for (int p = 0; p <= order; ++p)
    for (int q = 0; q + p <= order; ++q) out.at(p, q) = at(p, q);
  return out;
}

static int common_order(int a, int b) { return a < b ? a : b; }

ScalarJet operator+(const ScalarJet& a, const ScalarJet& b) {
  const int K = common_order(a.order(), b.order());
  ScalarJet c(K);
  for (int p = 0; p <= K; ++p)
    for (int q = 0; q + p <= K; ++q) c.at(p, q) = a.at(p, q) + b.at(p, q);
  return c;
}

ScalarJet operator-(const ScalarJet& a, const ScalarJet& b) {
  const int K = common_order(a.order(), b.order());
  ScalarJet c(K);
  for (int p = 0; p <= K; ++p)
    for (int q = 0; q + p <= K; ++q) c.at(p, q) = a.at(p, q) - b.at(p, q);
  return c;
}

ScalarJet operator*(const ScalarJet& a, const ScalarJet& b) {
  const int K = common_order(a.order(), b.order());
  ScalarJet c(K);
  for (int p = 0; p <= K; ++p)
    for (int q = 0; q + p <= K; ++q) {
      Cplx acc(0);
      for (int p1 = 0; p1 <= p; ++p1)
        for (int q1 = 0; q1 <= q; ++q1)
          acc += binom(p, p1) * binom(q, q1) * a.at(p1, q1) * b.at(p - p1, q - q1);
      c.at(p, q) = acc;
    }
  return c;
}

ScalarJet operator*(Cplx c, const ScalarJet& a) {
  ScalarJet out(a.order());
  for (int p = 0; p <= a.order(); ++p)
    for (int q = 0; q + p <= a.order(); ++q) out.at(p, q) = c * a.at(p, q);
  return out;
}

ScalarJet sj_conj(const ScalarJet& a) {
  ScalarJet out(a.order());
  for (int p = 0; p <= a.order(); ++p)
    for (int q = 0; q + p <= a.order(); ++q) out.at(p, q) = std::conj(a.at(q, p));
  return out;
}

ScalarJet sj_pow(const ScalarJet& g, double alpha) {
  const int K = g.order();
  const Cplx g0 = g.value();
  if (!(g0.real() > kDegenerateThreshold))
    throw degenerate_point("sj_pow: non-positive jet value");
  // g = g0 (1 + e), e nilpotent; (1+e)^alpha by binomial series.
  ScalarJet e = (1.0 / g0) * g;
  e.at(0, 0) = 0.0;
  ScalarJet acc = ScalarJet::constant(1.0, K);
  ScalarJet term = ScalarJet::constant(1.0, K);
  double coef = 1.0;
  for (int k = 1; k <= K; ++k) {
    coef *= (alpha - (k - 1)) / k;
    term = term * e;
    acc = acc + coef * term;
  }
  return std::pow(g0.real(), alpha) * acc;
}

static void sincos_series(const ScalarJet& e, ScalarJet& ce, ScalarJet& se) {
  // cos(e), sin(e) for nilpotent e.
  const int K = e.order();
  ce = ScalarJet::constant(1.0, K);
  se = e;
  ScalarJet power = e;
  double fact = 1.0;
  for (int k = 2; k <= K; ++k) {
    power = power * e;
    fact *= k;
    const double c = 1.0 / fact;
    if (k % 4 == 0)
      ce = ce + c * power;
    else if (k % 4 == 2)
      ce = ce - c * power;
    else if (k % 4 == 1)
      se = se + c * power;
    else
      se = se - c * power;
  }
}

ScalarJet sj_sin(const ScalarJet& u) {
  ScalarJet e = u;
  const Cplx u0 = u.value();
  e.at(0, 0) = 0.0;
  ScalarJet ce, se;
  sincos_series(e, ce, se);
  return std::sin(u0) * ce + std::cos(u0) * se;
}

ScalarJet sj_cos(const ScalarJet& u) {
  ScalarJet e = u;
  const Cplx u0 = u.value();
  e.at(0, 0) = 0.0;
  ScalarJet ce, se;
  sincos_series(e, ce, se);
  return std::cos(u0) * ce - std::sin(u0) * se;
}

ScalarJet sj_expi(const ScalarJet& u) { return sj_cos(u) + Cplx(0, 1) * sj_sin(u); }

ScalarJet sj_linear_xy(double a, double b, double c, double x, double y, int order) {
  // a x + b y + c = alpha z + conj(alpha) zb + c with alpha = (a - i b)/2.
  ScalarJet s(order);
  s.at(0, 0) = a * x + b * y + c;
  if (order >= 1) {
    s.at(1, 0) = Cplx(a / 2, -b / 2);
    s.at(0, 1) = Cplx(a / 2, b / 2);
  }
  return s;
}

VecJet VecJet::truncated(int order) const {
  VecJet out(dim_, order);
  for (int p = 0; p <= order; ++p)
    for (int q = 0; q + p <= order; ++q) out.at(p, q) = at(p, q);
  return out;
}

VecJet operator+(const VecJet& a, const VecJet& b) {
  const int K = common_order(a.order(), b.order());
  VecJet c(a.dim(), K);
  for (int p = 0; p <= K; ++p)
    for (int q = 0; q + p <= K; ++q) c.at(p, q) = a.at(p, q) + b.at(p, q);
  return c;
}

VecJet operator-(const VecJet& a, const VecJet& b) {
  const int K = common_order(a.order(), b.order());
  VecJet c(a.dim(), K);
  for (int p = 0; p <= K; ++p)
    for (int q = 0; q + p <= K; ++q) c.at(p, q) = a.at(p, q) - b.at(p, q);
  return c;
}

VecJet vj_dz(const VecJet& v) {
  const int K = v.order() - 1;
  if (K < 0) throw std::invalid_argument("vj_dz: jet order exhausted");
  VecJet out(v.dim(), K);
  for (int p = 0; p <= K; ++p)
    for (int q = 0; q + p <= K; ++q) out.at(p, q) = v.at(p + 1, q);
  return out;
}

VecJet vj_dzb(const VecJet& v) {
  const int K = v.order() - 1;
  if (K < 0) throw std::invalid_argument("vj_dzb: jet order exhausted");
  VecJet out(v.dim(), K);
  for (int p = 0; p <= K; ++p)
    for (int q = 0; q + p <= K; ++q) out.at(p, q) = v.at(p, q + 1);
  return out;
}

ScalarJet vj_inner(const VecJet& v, const VecJet& w) {
  const int K = common_order(v.order(), w.order());
  ScalarJet out(K);
  for (int p = 0; p <= K; ++p)
    for (int q = 0; q + p <= K; ++q) {
      Cplx acc(0);
      for (int p1 = 0; p1 <= p; ++p1)
        for (int q1 = 0; q1 <= q; ++q1)
          // the conjugated slot swaps its Wirtinger indices
          acc += binom(p, p1) * binom(q, q1) *
                 herm_inner(v.at(p1, q1), w.at(q - q1, p - p1));
      out.at(p, q) = acc;
    }
  return out;
}

VecJet vj_scale(const ScalarJet& s, const VecJet& v) {
  const int K = common_order(s.order(), v.order());
  VecJet out(v.dim(), K);
  for (int p = 0; p <= K; ++p)
    for (int q = 0; q + p <= K; ++q) {
      CVec acc = CVec::Zero(v.dim());
      for (int p1 = 0; p1 <= p; ++p1)
        for (int q1 = 0; q1 <= q; ++q1)
          acc += binom(p, p1) * binom(q, q1) * s.at(p1, q1) * v.at(p - p1, q - q1);
      out.at(p, q) = acc;
    }
  return out;
}

VecJet vj_j(const VecJet& v) {
  VecJet out(v.dim(), v.order());
  for (int p = 0; p <= v.order(); ++p)
    for (int q = 0; q + p <= v.order(); ++q) out.at(p, q) = j_map(v.at(q, p));
  return out;
}

VecJet vj_normalize(const VecJet& v) {
  ScalarJet g = vj_inner(v, v);
  if (!(g.value().real() > kDegenerateThreshold))
    throw degenerate_point("vj_normalize: lift vanishes");
  return vj_scale(sj_pow(g, -0.5), v);
}

}  // namespace hpsurf
