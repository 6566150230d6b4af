#pragma once

// Fused products of elementary vertex weights.
//
// Three fusion rules are checked:
//   rule 1: the rank-1 channel of two chained 4x4-leg weights collapses to a
//           scalar multiple of the channel projector (64-dim three-leg space),
//   rule 2: the rank-5 channel compression of R44(lam) R44(lam-1) reproduces
//           the 5x4 weight R54(lam-1/2) up to a fitted constant gauge,
//   rule 3: the rank-4 channel compression of R44(lam) R54(lam-5/2) on the
//           mixed (5,4,4) leg space reproduces R44(lam-2) up to a gauge.
//
// Gauges are constant (lambda-independent) matrices fitted once at a single
// reference point lambda* = 2 by solving the intertwiner equation
//   A (G x I_q) = (G x I_q) B
// as a linear nullspace problem; the fit is rejected unless the nullspace is
// one-dimensional and the residual at lambda* is tiny.

#include <sp4/algebra.hpp>

#include <stdexcept>
#include <vector>

namespace sp4 {

// Thrown when a structural invariant of the fusion construction fails
// (isometry rank mismatch, non-unique gauge, bad fit at the reference point).
class FusionError : public std::runtime_error {
 public:
  explicit FusionError(const std::string& what) : std::runtime_error(what) {}
};

// Orthonormal column basis U (d x r) for the range of a symmetric idempotent
// `proj` (d x d), built by Gram-Schmidt over its columns in ascending index
// order, dropping columns with remainder norm below `drop_tol`.
// Postconditions (verified, else FusionError):
//   U^T U = I_r,  U U^T = proj,  r = round(trace(proj)).
RMat projector_isometry(const RMat& proj, double drop_tol = 1e-10);

// Result of solving A (G x I_q) = (G x I_q) B for G (daux x daux).
struct GaugeFit {
  RMat g;                // fitted gauge, unit Frobenius norm, sign-normalized
  int nullity = 0;       // singular values of the Sylvester operator < threshold
  double smallest_sv = 0.0;   // smallest singular value (the solution direction)
  double nullspace_gap = 0.0; // second-smallest singular value
  double fit_residual = 0.0;  // max-abs residual of the intertwiner equation
};

// Dense SVD nullspace solve of the Sylvester-type intertwiner equation.
// A and B are (daux*dq) x (daux*dq). Throws FusionError if the nullspace
// dimension differs from 1 or the residual exceeds `residual_tol`.
GaugeFit fit_intertwiner(const RMat& a, const RMat& b, int daux, int dq,
                         double sv_threshold = 1e-8,
                         double residual_tol = 1e-8);

// Gauges for rules 2 and 3, fitted once at lambda* = 2 and cached.
struct FusionGauges {
  RMat g5;          // 5x5 gauge for rule 2
  RMat g4;          // 4x4 gauge for rule 3
  GaugeFit fit5;
  GaugeFit fit4;
  int rank2_uncompressed = 0;  // rank of the rule-2 product before compression
  double lambda_star = 2.0;
};

const FusionGauges& fusion_gauges();

// Residual report for one fusion rule at one spectral parameter.
struct FusionReport {
  int rule = 0;
  cplx lambda{0.0, 0.0};
  double residual = 0.0;   // max-abs deviation / max(max-abs LHS, 1)
  double lhs_scale = 0.0;  // max-abs of the (compressed) left-hand side
  double tol = 0.0;
  bool pass = false;
};

// Evaluate one fusion rule at a (possibly complex) spectral parameter.
// Rules 2 and 3 reuse the cached gauges from lambda* = 2.
FusionReport check_fusion_rule(int rule, cplx lambda, double tol = 1e-9);

// Largest relative residual of one rule over an n-point real grid [lo, hi].
double fusion_grid_residual(int rule, double lo, double hi, int n,
                            double tol = 1e-9);

// Compressed left-hand sides (exposed for tests and diagnostics).
CMat fus1_lhs(cplx lambda);             // 64x64, projector-sandwiched product
CMat fus2_lhs_compressed(cplx lambda);  // 20x20
CMat fus3_lhs_compressed(cplx lambda);  // 16x16

}  // namespace sp4
