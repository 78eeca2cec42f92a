#pragma once

// Jet providers for parametrized lifts and the SurfaceMap front door.
// A provider returns jets of the *raw* (possibly non-unit) lift; jet_at
// normalizes through differentiation so that |s| = 1 holds identically
// in every derivative identity downstream.

#include <cstdint>
#include <functional>
#include <memory>

#include "hpsurf/jet.hpp"
#include "hpsurf/types.hpp"

namespace hpsurf {

enum class ProviderKind { Exact, FiniteDifference };

class JetProvider {
 public:
  virtual ~JetProvider() = default;
  virtual int dim() const = 0;
  virtual int max_order() const = 0;
  virtual ProviderKind kind() const = 0;
  virtual VecJet raw_jets(double x, double y, int order) const = 0;
  // Extended-precision point values for finite-difference consumers.
  virtual LCVec value_ext(long double x, long double y) const;
};

// A parametrized surface: unit-lift jets plus a periodicity-cell hint.
struct SurfaceMap {
  std::shared_ptr<const JetProvider> provider;
  Cell cell;

  int dim() const { return provider->dim(); }
  int hp_n() const { return (provider->dim() - 2) / 2; }
};

// Normalized jet of the lift at a point.
struct Jet {
  VecJet jets;
  double x = 0, y = 0;
  ProviderKind kind = ProviderKind::Exact;

  const CVec& d(int p, int q) const { return jets.at(p, q); }
  const CVec& value() const { return jets.value(); }
  int order() const { return jets.order(); }
  int dim() const { return jets.dim(); }
};

Jet jet_at(const SurfaceMap& surface, double x, double y, int order);

// Default verdict tolerance by provider kind.
double default_tol(ProviderKind kind);

// --- exponential lifts -----------------------------------------------------

// Slot functions c * exp(a z - conj(a) zbar); the exponent argument is
// purely imaginary, so every slot has constant modulus.
class ExponentialLift : public JetProvider {
 public:
  struct Slot {
    Cplx coeff;
    Cplx expo;
  };

  explicit ExponentialLift(std::vector<Slot> slots);

  int dim() const override { return static_cast<int>(slots_.size()); }
  int max_order() const override { return 64; }
  ProviderKind kind() const override { return ProviderKind::Exact; }
  VecJet raw_jets(double x, double y, int order) const override;
  LCVec value_ext(long double x, long double y) const override;

  const std::vector<Slot>& slots() const { return slots_; }

 private:
  std::vector<Slot> slots_;
};

// --- polynomial lifts in (z, zbar) ------------------------------------------

class PolynomialLift : public JetProvider {
 public:
  struct Term {
    Cplx coeff;
    int pz = 0;
    int pzb = 0;
  };
  using Slot = std::vector<Term>;

  explicit PolynomialLift(std::vector<Slot> slots);

  int dim() const override { return static_cast<int>(slots_.size()); }
  int max_order() const override { return 64; }
  ProviderKind kind() const override { return ProviderKind::Exact; }
  VecJet raw_jets(double x, double y, int order) const override;
  LCVec value_ext(long double x, long double y) const override;

 private:
  std::vector<Slot> slots_;
};

// --- smooth SU(2) gauge fields ----------------------------------------------

// T = [[p, -conj(q)], [q, conj(p)]] with p = cos(rho) e^{i phi},
// q = sin(rho) e^{i psi}; rho, phi, psi are trig polynomials of (x,y)
// with exact derivatives of every order.
class SU2Field {
 public:
  struct Wave {
    double amp = 0, kx = 0, ky = 0, phase = 0;  // amp*sin(kx*x + ky*y + phase)
  };
  struct Params {
    std::vector<Wave> rho, phi, psi;
    double rho0 = 0;
  };

  explicit SU2Field(Params params) : params_(std::move(params)) {}

  // Pure phase gauge s -> s e^{i theta}: T = diag(e^{i theta}, e^{-i theta}).
  static SU2Field phase(std::vector<Wave> theta);
  // Seeded random smooth field with O(1) amplitudes and low frequencies.
  static SU2Field random(std::uint64_t seed, double freq_scale = 1.0);

  // Jets of the four entries at (x,y).
  std::array<ScalarJet, 4> entry_jets(double x, double y, int order) const;
  CMat matrix(double x, double y) const;

 private:
  ScalarJet field_jet(const std::vector<Wave>& waves, double base, double x,
                      double y, int order) const;
  Params params_;
};

// Lift (s, js) * T, first column; T from a smooth SU(2) field.
class GaugedLift : public JetProvider {
 public:
  GaugedLift(std::shared_ptr<const JetProvider> base, SU2Field field);

  int dim() const override { return base_->dim(); }
  int max_order() const override { return base_->max_order(); }
  ProviderKind kind() const override { return base_->kind(); }
  VecJet raw_jets(double x, double y, int order) const override;

 private:
  std::shared_ptr<const JetProvider> base_;
  SU2Field field_;
};

// Lift x -> U * s(x) for a constant matrix U (e.g. a symplectic congruence).
class TransformedLift : public JetProvider {
 public:
  TransformedLift(std::shared_ptr<const JetProvider> base, CMat transform);

  int dim() const override { return static_cast<int>(transform_.rows()); }
  int max_order() const override { return base_->max_order(); }
  ProviderKind kind() const override { return base_->kind(); }
  VecJet raw_jets(double x, double y, int order) const override;

 private:
  std::shared_ptr<const JetProvider> base_;
  CMat transform_;
};

// --- finite differences ------------------------------------------------------

// Central-stencil jets of a pointwise-evaluable lift. Values are taken in
// extended precision so the default step stays truncation-dominated for
// second derivatives. Orders up to 4.
class FiniteDifferenceProvider : public JetProvider {
 public:
  using ValueFun = std::function<LCVec(long double, long double)>;

  FiniteDifferenceProvider(ValueFun fun, int dim, double step = 1e-4,
                           int richardson_levels = 1);
  static std::shared_ptr<FiniteDifferenceProvider> wrap(
      const SurfaceMap& surface, double step = 1e-4, int richardson_levels = 1);

  int dim() const override { return dim_; }
  int max_order() const override { return 4; }
  ProviderKind kind() const override { return ProviderKind::FiniteDifference; }
  VecJet raw_jets(double x, double y, int order) const override;
  LCVec value_ext(long double x, long double y) const override { return fun_(x, y); }

 private:
  VecJet stencil_jets(long double x, long double y, int order, long double h) const;
  ValueFun fun_;
  int dim_;
  double step_;
  int richardson_;
};

}  // namespace hpsurf
