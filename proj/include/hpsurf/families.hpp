#pragma once

// Generators for the exponential family and the two classified surfaces with
// their horizontal-lift variants, plus congruence invariants extracted from
// unitary-invariant power sums.

#include <cstdint>
#include <optional>

#include "hpsurf/harmonic.hpp"

namespace hpsurf {

struct ExponentialFamily {
  std::vector<double> thetas;   // 0 = theta_0 < theta_1 < ... < 2*pi
  std::vector<double> weights;  // positive, summing to 1

  int top_index() const { return static_cast<int>(thetas.size()) - 1; }
  void validate() const;
  Cplx exponent_sum() const;  // sum e^{i theta_k} r_k (the minimality obstruction)
};

// Member lift with component k in slot 2k (first slot of pair k); ambient
// dimension 2(m+1).
SurfaceMap make_exponential(const ExponentialFamily& family);

enum class Variant { Clifford, Companion };
enum class LiftVariant { InterleavedZeros, FullEvenN, FullSigned };

struct ClassifiedSpec {
  int n = 1;
  Variant variant = Variant::Clifford;
  LiftVariant lift = LiftVariant::InterleavedZeros;
  Cplx phase = Cplx(1, 0);     // free unit phase of the even-n full lift
  double weight_ratio = 3.0;   // r0/r1 of the even-n full lift (must be != 1)
};

struct ClassifiedPair {
  SurfaceMap surface;  // viewed in HP^n through the twistor projection
  SurfaceMap lift;     // the homogeneous-coordinate lift in C^{2n+2}
};

ClassifiedPair make_classified(const ClassifiedSpec& spec);

Cell default_cell(int n);

// Multisets {exponent} / {weight} of a surface, invariant under constant
// symplectic transformations of the lift; antipodal exponent pairs {a,-a}
// merge into the representative with arg in [0, pi).
struct InvariantSet {
  std::vector<Cplx> exponents;  // sorted by argument
  std::vector<double> weights;  // aligned with exponents
  std::vector<Cplx> raw_nodes;  // pre-merge slot exponents
  std::vector<double> raw_weights;
};

InvariantSet congruence_invariants(const SurfaceMap& surface, const GridSpec& grid,
                                   double tol = 1e-8);
bool invariants_close(const InvariantSet& a, const InvariantSet& b, double tol = 1e-7);

}  // namespace hpsurf
