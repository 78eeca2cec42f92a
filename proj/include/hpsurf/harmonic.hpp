#pragma once

// Harmonic sequences of a lift: forward/backward frame recursion, isotropy
// order estimation, the quaternionic orthogonality relations and the
// rank-2 bundle decomposition of the induced HP sequence.

#include "hpsurf/checks.hpp"

namespace hpsurf {

struct HarmonicSequence {
  double x = 0, y = 0;
  int depth = 0;
  // frames[k + depth] holds f_k for k in [-depth, depth]; frames are rescaled
  // by a constant per step, so f_k stays parallel to the true recursion frame.
  std::vector<CVec> frames;
  std::vector<double> norms;  // |f_k| before the constant rescale
  bool terminated_fw = false, terminated_bw = false;
  int term_index_fw = 0, term_index_bw = 0;  // first vanishing index when terminated

  const CVec& frame(int k) const { return frames[k + depth]; }
  bool has(int k) const;
  // normalized <f_i, f_j> and <f_i, j f_j>
  Cplx gram(int i, int j) const;
  Cplx jgram(int i, int j) const;
};

// Frames via f_{k+1} = dz f_k - (<dz f_k, f_k>/|f_k|^2) f_k and the dzb
// analogue, carried on jets so every step differentiates exactly.
HarmonicSequence build_sequence(const SurfaceMap& lift, double x, double y, int depth);

struct IsotropyResult {
  int order = 0;        // smallest r >= 1 with |gram(r+1,0)| > tol
  bool at_least = false;  // true when no such r <= depth-1 exists ("\">= depth\"")
  bool full = true;       // false when the sequence terminated before depth
  int terminating_index = 0;
  double witness = 0.0;   // the gram magnitude that ended the run
};

IsotropyResult isotropy_order(const SurfaceMap& lift, const GridSpec& grid, int depth,
                              double tol = 1e-6, Exec exec = Exec::Auto);

// Proposition-style residual: max over the grid and k <= depth of
// |<f_k, j f_{-q}>| (q in {k-2,k-1,k}), of the mismatch between the rank-2
// projector span{f_k, j f_{-k}} and the projector propagated through the
// Grassmannian A'-transform, and of the j-symmetry of negative levels.
CheckEntry check_prop35(const SurfaceMap& lift, const GridSpec& grid, int depth,
                        double tol = 1e-8, Exec exec = Exec::Auto);

// Rank-2 projector of span{f_k, j f_{-k}} at one point.
CMat level_projector(const HarmonicSequence& seq, int k);

// Numerical rank of grid samples of the lift (linear fullness).
int lift_span_rank(const SurfaceMap& lift, const GridSpec& grid, double svtol = 1e-8);

}  // namespace hpsurf
