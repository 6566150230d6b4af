#pragma once

// Spectral toolbox for the transfer-matrix family.
//
// All members of the family { T4(lambda), T5(mu) } commute, so they share
// eigenvectors that do not depend on the spectral parameter. The reference
// branch is anchored by the vector of lowest energy within the momentum-zero,
// charge-(0,0) sector of the spin-chain Hamiltonian; its transfer eigenvalue
// at any lambda follows from a single matrix-free application via a Rayleigh
// quotient, and is a polynomial of degree 2L in lambda.

#include <sp4/algebra.hpp>

#include <cstdint>
#include <functional>
#include <vector>

namespace sp4 {

// ---------------------------------------------------------------------------
// Generic iterative eigensolvers (operator given as a callback)
// ---------------------------------------------------------------------------

struct PowerIterationResult {
  cplx eigenvalue{0.0, 0.0};
  CVec eigenvector;
  int iterations = 0;
  double residual = 0.0;        // |A v - lambda v| / (|v| |lambda|)
  double eigenvalue_delta = 0.0;  // last relative change of the estimate
  bool converged = false;
};

struct PowerIterationOptions {
  double tol_eigenvalue = 1e-12;  // relative change between sweeps
  double tol_residual = 1e-10;
  int max_iterations = 10000;
  std::uint64_t seed = 20240901;  // random start when no seed vector given
};

// Power iteration with a Rayleigh-quotient eigenvalue estimate every sweep.
// Requires a dominant simple eigenvalue; with an equal-modulus cluster the
// iteration reports converged = false after max_iterations.
PowerIterationResult leading_eigenpair(
    const std::function<void(const CVec&, CVec&)>& apply_op, Eigen::Index dim,
    const CVec& seed_vector = CVec(), const PowerIterationOptions& opt = {});

struct LanczosResult {
  double eigenvalue = 0.0;
  RVec eigenvector;
  int iterations = 0;
  double residual = 0.0;  // |A v - theta v| / max(|theta|, 1)
  int restarts = 0;
  bool converged = false;
};

struct LanczosOptions {
  int max_iterations = 350;
  double tol = 1e-13;       // relative change of the extreme Ritz value
  int max_restarts = 3;
  double residual_tol = 1e-9;
};

// Two-pass Lanczos for the LOWEST eigenvalue of a symmetric operator: the
// first pass builds the tridiagonal section (three-vector recurrence, no full
// reorthogonalization), the second rebuilds the Krylov basis to assemble the
// eigenvector. `constrain` (optional) re-projects every Krylov vector onto an
// invariant subspace, keeping the iteration inside it.
LanczosResult lanczos_lowest(const std::function<void(const RVec&, RVec&)>& apply_op,
                             Eigen::Index dim, const RVec& seed,
                             const std::function<void(RVec&)>& constrain = nullptr,
                             const LanczosOptions& opt = {});

// ---------------------------------------------------------------------------
// Reference branch
// ---------------------------------------------------------------------------

// Normalized lowest-energy vector of the momentum-zero, charge-(0,0) sector;
// computed once per L and cached. Deterministic (fixed internal seed).
const RVec& branch_vector(int L);

// Ground-state energy of that sector, <psi| H |psi>.
double ground_energy(int L);

// Rayleigh quotient psi^T T^(rep)(lambda) psi (psi normalized): the transfer
// eigenvalue on the reference branch. One matrix-free application per call.
cplx branch_eigenvalue(int rep, int L, cplx lambda);
double branch_eigenvalue_real(int rep, int L, double lambda);

// Eigen-equation residual |T psi - Lambda psi| / (|Lambda| |psi|) at lambda.
double branch_residual(int rep, int L, double lambda);

// ---------------------------------------------------------------------------
// Polynomial form of the branch eigenvalue
// ---------------------------------------------------------------------------

// Chebyshev interpolation of Lambda_0(lambda) from 2L+1 real nodes; since the
// eigenvalue is an exact polynomial of degree 2L, the interpolant reproduces
// it at any complex lambda (evaluated by Clenshaw recurrence).
class TransferPolynomial {
 public:
  TransferPolynomial(int rep, int L, double lo = -3.5, double hi = 0.5);

  cplx operator()(cplx lambda) const;
  int degree() const { return static_cast<int>(coeff_.size()) - 1; }
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_, hi_;
  std::vector<double> coeff_;  // Chebyshev coefficients on [lo, hi]
};

// ---------------------------------------------------------------------------
// Branch continuation and the finite-size free-energy density
// ---------------------------------------------------------------------------

struct BranchPoint {
  cplx lambda{0.0, 0.0};
  cplx eigenvalue{0.0, 0.0};
  cplx kappa{0.0, 0.0};   // eigenvalue^(1/L), phase-continued along the path
  double overlap = 1.0;   // |<psi_prev, psi_here>|; 1 for the shared eigenvector
  double residual = -1.0; // eigen-equation residual, -1 when not evaluated
};

struct BranchOptions {
  double max_spacing = 0.05;   // path points further apart are interpolated
  double overlap_min = 0.5;    // continuation guard (diagnostic)
  bool compute_residual = false;  // one extra application per point when true
};

// Follow the reference branch along a piecewise-linear path in the complex
// lambda plane. Consecutive input points further apart than max_spacing are
// subdivided. kappa is phase-continued starting from the principal root at
// the first point.
std::vector<BranchPoint> eigen_branch(int rep, int L, const std::vector<cplx>& path,
                                      const BranchOptions& opt = {});

// kappa_L(lambda) = Lambda_0(lambda)^(1/L), principal root (real lambda).
double kappa_finite(int rep, int L, double lambda);

}  // namespace sp4
