#pragma once

// Complex linear algebra over C^{2n+2} with the quaternionic structure
// operator j, the symplectic group test, and the two submersions onto HP^n.

#include <cstdint>

#include "hpsurf/types.hpp"

namespace hpsurf {

// Standard Hermitian inner product <v,w> = sum_a v_a conj(w_a).
Cplx herm_inner(const CVec& v, const CVec& w);

// Block-diagonal J with 2x2 blocks [[0,-1],[1,0]]; dim must be even.
CMat j_matrix(int dim);

// jv = J conj(v): within each coordinate pair (a,b) -> (-conj(b), conj(a)).
CVec j_map(const CVec& v);

// U in U(dim) with U J U^T = J, both to max-entry tolerance.
bool is_symplectic(const CMat& U, double tol = 1e-10);

// A point of HP^n as the rank-2 Hermitian projector s s* + (js)(js)*.
struct HPoint {
  CMat projector;

  int dim() const { return static_cast<int>(projector.rows()); }
};

// Normalizes v and forms the projector onto span{s, js}. Invariant under
// v -> lambda v and v -> j v. Throws std::invalid_argument on ~zero input.
HPoint twistor_project(const CVec& v);

// Max-entry norm of the projector difference; zero iff same point.
double hpoint_distance(const HPoint& p, const HPoint& q);

double max_abs(const CMat& m);

// Haar-ish random element of Sp(n+1) = U(2n+2) cap {U J U^T = J},
// built as exp of a random quaternionic anti-Hermitian matrix.
CMat random_symplectic(int half_dim, std::uint64_t seed);

}  // namespace hpsurf
