#include "hpsurf/providers.hpp"

#include <array>
#include <cmath>
#include <random>

namespace hpsurf {

LCVec JetProvider::value_ext(long double x, long double y) const {
  const VecJet v = raw_jets(static_cast<double>(x), static_cast<double>(y), 0);
  LCVec out(v.dim());
  for (int i = 0; i < v.dim(); ++i)
    out[i] = LCplx(v.value()[i].real(), v.value()[i].imag());
  return out;
}

double default_tol(ProviderKind kind) {
  return kind == ProviderKind::Exact ? 1e-10 : 1e-6;
}

Jet jet_at(const SurfaceMap& surface, double x, double y, int order) {
  if (order < 0) throw std::invalid_argument("jet_at: negative order");
  if (order > surface.provider->max_order())
    throw std::invalid_argument("jet_at: order beyond provider capability");
  VecJet raw = surface.provider->raw_jets(x, y, order);
  return Jet{vj_normalize(raw), x, y, surface.provider->kind()};
}

// --- ExponentialLift ---------------------------------------------------------

ExponentialLift::ExponentialLift(std::vector<Slot> slots) : slots_(std::move(slots)) {
  if (slots_.empty() || slots_.size() % 2 != 0)
    throw std::invalid_argument("ExponentialLift: even positive slot count required");
}

VecJet ExponentialLift::raw_jets(double x, double y, int order) const {
  const int n = dim();
  VecJet out(n, order);
  for (int s = 0; s < n; ++s) {
    const Cplx a = slots_[s].expo;
    // a z - conj(a z) = 2i Im(a z); the slot keeps unit modulus.
    const double phase = 2.0 * (a.imag() * x + a.real() * y);
    const Cplx val = slots_[s].coeff * Cplx(std::cos(phase), std::sin(phase));
    std::vector<Cplx> apow(order + 1), bpow(order + 1);
    apow[0] = bpow[0] = Cplx(1);
    for (int k = 1; k <= order; ++k) {
      apow[k] = apow[k - 1] * a;
      bpow[k] = bpow[k - 1] * (-std::conj(a));
    }
    for (int p = 0; p <= order; ++p)
      for (int q = 0; q + p <= order; ++q) out.at(p, q)[s] = apow[p] * bpow[q] * val;
  }
  return out;
}

LCVec ExponentialLift::value_ext(long double x, long double y) const {
  LCVec out(dim());
  for (int s = 0; s < dim(); ++s) {
    const Cplx a = slots_[s].expo;
    const long double phase =
        2.0L * (static_cast<long double>(a.imag()) * x + static_cast<long double>(a.real()) * y);
    const LCplx e(cosl(phase), sinl(phase));
    out[s] = LCplx(slots_[s].coeff.real(), slots_[s].coeff.imag()) * e;
  }
  return out;
}

// --- PolynomialLift ----------------------------------------------------------

PolynomialLift::PolynomialLift(std::vector<Slot> slots) : slots_(std::move(slots)) {
  if (slots_.empty() || slots_.size() % 2 != 0)
    throw std::invalid_argument("PolynomialLift: even positive slot count required");
}

static Cplx cpow_i(Cplx z, int k) {
  Cplx r(1);
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

VecJet PolynomialLift::raw_jets(double x, double y, int order) const {
  const Cplx z(x, y);
  const Cplx zb = std::conj(z);
  VecJet out(dim(), order);
  for (int s = 0; s < dim(); ++s) {
    for (const Term& t : slots_[s]) {
      for (int p = 0; p <= std::min(order, t.pz); ++p) {
        for (int q = 0; q + p <= order && q <= t.pzb; ++q) {
          double falling = 1.0;
          for (int i = 0; i < p; ++i) falling *= (t.pz - i);
          for (int i = 0; i < q; ++i) falling *= (t.pzb - i);
          out.at(p, q)[s] += t.coeff * falling * cpow_i(z, t.pz - p) * cpow_i(zb, t.pzb - q);
        }
      }
    }
  }
  return out;
}

LCVec PolynomialLift::value_ext(long double x, long double y) const {
  const LCplx z(x, y);
  const LCplx zb(x, -y);
  LCVec out = LCVec::Zero(dim());
  for (int s = 0; s < dim(); ++s) {
    for (const Term& t : slots_[s]) {
      LCplx m(t.coeff.real(), t.coeff.imag());
      for (int i = 0; i < t.pz; ++i) m *= z;
      for (int i = 0; i < t.pzb; ++i) m *= zb;
      out[s] += m;
    }
  }
  return out;
}

// --- SU2Field -----------------------------------------------------------------

SU2Field SU2Field::phase(std::vector<Wave> theta) {
  Params p;
  p.phi = theta;
  p.psi = std::move(theta);
  for (Wave& w : p.psi) w.amp = -w.amp;
  p.rho0 = 0.0;  // p = e^{i theta}, q = 0
  return SU2Field(std::move(p));
}

SU2Field SU2Field::random(std::uint64_t seed, double freq_scale) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-0.5, 0.5);
  std::uniform_int_distribution<int> freq(1, 2);
  std::uniform_real_distribution<double> ph(0.0, 6.28318530717958648);
  Params p;
  auto waves = [&](int count) {
    std::vector<Wave> w;
    for (int i = 0; i < count; ++i)
      w.push_back({amp(rng), freq(rng) * freq_scale, freq(rng) * freq_scale, ph(rng)});
    return w;
  };
  p.rho = waves(2);
  p.phi = waves(2);
  p.psi = waves(2);
  p.rho0 = 0.4;
  return SU2Field(std::move(p));
}

ScalarJet SU2Field::field_jet(const std::vector<Wave>& waves, double base, double x,
                              double y, int order) const {
  ScalarJet acc = ScalarJet::constant(base, order);
  for (const Wave& w : waves) {
    const ScalarJet u = sj_linear_xy(w.kx, w.ky, w.phase, x, y, order);
    acc = acc + w.amp * sj_sin(u);
  }
  return acc;
}

std::array<ScalarJet, 4> SU2Field::entry_jets(double x, double y, int order) const {
  const ScalarJet rho = field_jet(params_.rho, params_.rho0, x, y, order);
  const ScalarJet phi = field_jet(params_.phi, 0.0, x, y, order);
  const ScalarJet psi = field_jet(params_.psi, 0.0, x, y, order);
  const ScalarJet p = sj_cos(rho) * sj_expi(phi);
  const ScalarJet q = sj_sin(rho) * sj_expi(psi);
  // row-major [T00, T01, T10, T11]
  return {p, Cplx(-1) * sj_conj(q), q, sj_conj(p)};
}

CMat SU2Field::matrix(double x, double y) const {
  const auto e = entry_jets(x, y, 0);
  CMat T(2, 2);
  T << e[0].value(), e[1].value(), e[2].value(), e[3].value();
  return T;
}

// --- GaugedLift ----------------------------------------------------------------

GaugedLift::GaugedLift(std::shared_ptr<const JetProvider> base, SU2Field field)
    : base_(std::move(base)), field_(std::move(field)) {}

VecJet GaugedLift::raw_jets(double x, double y, int order) const {
  const VecJet s = vj_normalize(base_->raw_jets(x, y, order));
  const VecJet js = vj_j(s);
  const auto e = field_.entry_jets(x, y, order);
  return vj_scale(e[0], s) + vj_scale(e[2], js);
}

// --- TransformedLift -----------------------------------------------------------

TransformedLift::TransformedLift(std::shared_ptr<const JetProvider> base, CMat transform)
    : base_(std::move(base)), transform_(std::move(transform)) {
  if (transform_.cols() != base_->dim())
    throw std::invalid_argument("TransformedLift: shape mismatch");
}

VecJet TransformedLift::raw_jets(double x, double y, int order) const {
  const VecJet b = base_->raw_jets(x, y, order);
  VecJet out(dim(), order);
  for (int p = 0; p <= order; ++p)
    for (int q = 0; q + p <= order; ++q) out.at(p, q) = transform_ * b.at(p, q);
  return out;
}

// --- FiniteDifferenceProvider -----------------------------------------------------

FiniteDifferenceProvider::FiniteDifferenceProvider(ValueFun fun, int dim, double step,
                                                   int richardson_levels)
    : fun_(std::move(fun)), dim_(dim), step_(step), richardson_(richardson_levels) {
  if (step_ <= 0) throw std::invalid_argument("FiniteDifferenceProvider: step must be positive");
}

std::shared_ptr<FiniteDifferenceProvider> FiniteDifferenceProvider::wrap(
    const SurfaceMap& surface, double step, int richardson_levels) {
  auto provider = surface.provider;
  return std::make_shared<FiniteDifferenceProvider>(
      [provider](long double x, long double y) { return provider->value_ext(x, y); },
      provider->dim(), step, richardson_levels);
}

namespace {

// Order-2 central stencils on offsets -2..2, scaled by h^-m.
const std::array<std::array<long double, 5>, 5> kStencil = {{
    {0.0L, 0.0L, 1.0L, 0.0L, 0.0L},
    {0.0L, -0.5L, 0.0L, 0.5L, 0.0L},
    {0.0L, 1.0L, -2.0L, 1.0L, 0.0L},
    {-0.5L, 1.0L, 0.0L, -1.0L, 0.5L},
    {1.0L, -4.0L, 6.0L, -4.0L, 1.0L},
}};

LCplx ipow(int m) {
  switch (((m % 4) + 4) % 4) {
    case 0: return LCplx(1, 0);
    case 1: return LCplx(0, 1);
    case 2: return LCplx(-1, 0);
    default: return LCplx(0, -1);
  }
}

}  // namespace

VecJet FiniteDifferenceProvider::stencil_jets(long double x, long double y, int order,
                                              long double h) const {
  // Tabulate values on the 5x5 cross-product stencil.
  std::array<std::array<LCVec, 5>, 5> f;
  for (int r = -2; r <= 2; ++r)
    for (int s = -2; s <= 2; ++s) f[r + 2][s + 2] = fun_(x + r * h, y + s * h);

  // Cartesian partials dx^i dy^j, i+j <= order.
  std::vector<std::vector<LCVec>> part(order + 1, std::vector<LCVec>(order + 1));
  for (int i = 0; i <= order; ++i) {
    for (int j = 0; i + j <= order; ++j) {
      LCVec acc = LCVec::Zero(dim_);
      for (int r = -2; r <= 2; ++r) {
        const long double cr = kStencil[i][r + 2];
        if (cr == 0.0L) continue;
        for (int s = -2; s <= 2; ++s) {
          const long double cs = kStencil[j][s + 2];
          if (cs == 0.0L) continue;
          acc += (cr * cs) * f[r + 2][s + 2];
        }
      }
      long double scale = 1.0L;
      for (int k = 0; k < i + j; ++k) scale *= h;
      part[i][j] = acc / scale;
    }
  }

  // Wirtinger: dz^p dzb^q = 2^{-(p+q)} (dx - i dy)^p (dx + i dy)^q.
  VecJet out(dim_, order);
  for (int p = 0; p <= order; ++p) {
    for (int q = 0; q + p <= order; ++q) {
      LCVec acc = LCVec::Zero(dim_);
      for (int k = 0; k <= p; ++k)
        for (int l = 0; l <= q; ++l) {
          const LCplx coef = static_cast<long double>(binom(p, k) * binom(q, l)) *
                             ipow(-(p - k)) * ipow(q - l);
          acc += coef * part[k + l][(p - k) + (q - l)];
        }
      long double scale = 1.0L;
      for (int k = 0; k < p + q; ++k) scale *= 0.5L;
      acc *= scale;
      CVec d(dim_);
      for (int i = 0; i < dim_; ++i)
        d[i] = Cplx(static_cast<double>(acc[i].real()), static_cast<double>(acc[i].imag()));
      out.at(p, q) = d;
    }
  }
  return out;
}

VecJet FiniteDifferenceProvider::raw_jets(double x, double y, int order) const {
  if (order > 4)
    throw std::invalid_argument("FiniteDifferenceProvider: order capped at 4");
  const long double xl = x, yl = y;
  long double h = step_;
  if (richardson_ > 0) h = step_;
  if (xl + h == xl || yl + h == yl)
    throw std::invalid_argument("FiniteDifferenceProvider: step underflow");
  VecJet base = stencil_jets(xl, yl, order, h);
  for (int level = 0; level < richardson_; ++level) {
    h *= 0.5L;
    if (xl + h == xl || yl + h == yl)
      throw std::invalid_argument("FiniteDifferenceProvider: step underflow");
    const VecJet fine = stencil_jets(xl, yl, order, h);
    VecJet combined(dim_, order);
    for (int p = 0; p <= order; ++p)
      for (int q = 0; q + p <= order; ++q)
        combined.at(p, q) = (4.0 * fine.at(p, q) - base.at(p, q)) / 3.0;
    base = combined;
  }
  return base;
}

}  // namespace hpsurf
