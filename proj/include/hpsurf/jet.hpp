#pragma once

// Truncated Wirtinger jets: tables of mixed derivatives d_z^p d_zb^q up to a
// total order, for scalar functions and for C^dim-valued lifts. All identities
// the residual checks rely on (Leibniz for sesquilinear inner products,
// d_z o j = j o d_zb, normalization via the quotient rule) are implemented
// here once and exactly.

#include <vector>

#include "hpsurf/core.hpp"
#include "hpsurf/types.hpp"

namespace hpsurf {

// Triangular layout for (p,q) with p+q <= order: index = T(p+q) + q.
inline int jet_index(int p, int q) {
  const int d = p + q;
  return d * (d + 1) / 2 + q;
}
inline int jet_table_size(int order) { return (order + 1) * (order + 2) / 2; }

double binom(int n, int k);

class ScalarJet {
 public:
  ScalarJet() = default;
  explicit ScalarJet(int order) : order_(order), a_(jet_table_size(order), Cplx(0)) {}
  static ScalarJet constant(Cplx v, int order);

  int order() const { return order_; }
  Cplx& at(int p, int q) { return a_[jet_index(p, q)]; }
  const Cplx& at(int p, int q) const { return a_[jet_index(p, q)]; }
  Cplx value() const { return a_[0]; }

  ScalarJet truncated(int order) const;

 private:
  int order_ = 0;
  std::vector<Cplx> a_;
};

ScalarJet operator+(const ScalarJet& a, const ScalarJet& b);
ScalarJet operator-(const ScalarJet& a, const ScalarJet& b);
ScalarJet operator*(const ScalarJet& a, const ScalarJet& b);
ScalarJet operator*(Cplx c, const ScalarJet& a);

// conj(f): entries conj with (p,q) swapped.
ScalarJet sj_conj(const ScalarJet& a);
// f^alpha for a jet whose value is real positive (binomial series).
ScalarJet sj_pow(const ScalarJet& g, double alpha);
// sin/cos/e^{i f} of a real-valued jet.
ScalarJet sj_sin(const ScalarJet& u);
ScalarJet sj_cos(const ScalarJet& u);
ScalarJet sj_expi(const ScalarJet& u);
// Jet of the real-linear form a*x + b*y + c.
ScalarJet sj_linear_xy(double a, double b, double c, double x, double y, int order);

class VecJet {
 public:
  VecJet() = default;
  VecJet(int dim, int order)
      : dim_(dim), order_(order), d_(jet_table_size(order), CVec::Zero(dim)) {}

  int dim() const { return dim_; }
  int order() const { return order_; }
  CVec& at(int p, int q) { return d_[jet_index(p, q)]; }
  const CVec& at(int p, int q) const { return d_[jet_index(p, q)]; }
  const CVec& value() const { return d_[0]; }

  VecJet truncated(int order) const;

 private:
  int dim_ = 0;
  int order_ = 0;
  std::vector<CVec> d_;
};

VecJet operator+(const VecJet& a, const VecJet& b);
VecJet operator-(const VecJet& a, const VecJet& b);

// Shift operators: jets of d_z f and d_zb f (one order lower).
VecJet vj_dz(const VecJet& v);
VecJet vj_dzb(const VecJet& v);

// Jet of <v,w>; uses d_z <v,w> = <d_z v, w> + <v, d_zb w>.
ScalarJet vj_inner(const VecJet& v, const VecJet& w);
// Jet of (scalar) * (vector).
VecJet vj_scale(const ScalarJet& s, const VecJet& v);
// Jet of j(v): d_z^p d_zb^q (jv) = j(d_z^q d_zb^p v).
VecJet vj_j(const VecJet& v);

// Jet of v/|v| via the quotient rule (exact through all orders).
// Throws degenerate_point when |v|^2 falls below the threshold.
VecJet vj_normalize(const VecJet& v);

}  // namespace hpsurf
