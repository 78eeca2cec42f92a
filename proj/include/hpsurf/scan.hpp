#pragma once

// Small-n constraint scan: finds exponential-family parameters satisfying the
// moment conditions, solves the grouped linear system on the anti-symmetric
// W matrix, and (for full-index families) the isotropy-closure relations.

#include <cstdint>
#include <optional>

#include "hpsurf/families.hpp"

namespace hpsurf {

struct ScanParams {
  int n = 1;
  int m = 1;
  int trials = 64;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::optional<std::vector<double>> thetas;  // when set, only weights are solved
};

struct WEntry {
  int i = 0, j = 0;
  bool forced_zero = false;
};

struct ScanClosure {
  bool ran = false;
  bool feasible = false;
  Cplx a_coef;                 // the f_0-component of the closure relation
  double b_abs = 0.0;          // modulus of the j f_0 coefficient
  std::vector<Cplx> w_ratio;   // w_tau / w_0 along the anti-diagonal
  bool alternating = false;    // w_tau / w_0 = (-1)^tau
  bool exponents_are_roots = false;  // a_j^{2n+2} = 1
};

struct ScanReport {
  int n = 0, m = 0;
  bool params_feasible = false;
  int attempts = 0;
  std::vector<double> thetas;
  std::vector<double> weights;
  std::vector<WEntry> entries;     // pairs i < j <= m
  bool topleft_block_zero = false; // every constrained pair forced to zero
  bool unitary_feasible = true;    // false when the forced pattern kills unitarity
  ScanClosure closure;
};

ScanReport constraint_scan(const ScanParams& params);

// Rows node^{2t+1} (t = 0..q) then conj(node)^{2t+1}: the (2q+2) x (p+1)
// system whose full column rank forces the anti-diagonal couplings to vanish.
CMat vandermonde_system(const std::vector<Cplx>& nodes, int q);
bool full_column_rank(const CMat& M, double tol = 1e-8);

}  // namespace hpsurf
