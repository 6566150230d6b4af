#pragma once
// Local operators of the Sp(4) vertex model: identity/permutation/Temperley-Lieb
// generators, the fundamental R-matrix on 4x4, the fused R-matrix on 5x4, and
// the projector families of both tensor-product decompositions.  Everything is
// available exactly over Q(sqrt(2)) and as complex-double matrices.

#include "sp4/exact.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace sp4 {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// ---------------------------------------------------------------------------
// Exact layer
// ---------------------------------------------------------------------------

struct LocalOpsExact {
  ExactMatrix I;  // 16x16 identity
  ExactMatrix P;  // 16x16 permutation of the two legs
  ExactMatrix E;  // 16x16 Temperley-Lieb generator, E^2 = -4E, tr E = -4
  ExactMatrix V;  // 4x4 crossing matrix, anti-diagonal (1,1,-1,-1) from top-right
};

LocalOpsExact build_local_ops_exact();

// R(lambda) = lambda(lambda+3) I + (lambda+3) P + lambda E   on 4x4.
ExactMatrix build_r44_exact(const QSqrt2& lam);

// Projectors of 4x4 = 1 + 5 + 10 (dimensions of the invariant subspaces).
struct ProjectorFamily44 {
  ExactMatrix p1, p5, p10;
};
ProjectorFamily44 build_projectors_44_exact();

// 20x20 projector onto the 4-dimensional subspace of 5x4 (contains sqrt(2)/5
// entries), plus its 16-dimensional complement.
ExactMatrix build_p44_exact();

// R(lambda) = (lambda - 5/2) P4 + (lambda + 5/2) (I - P4)   on 5x4 (20x20).
ExactMatrix build_r54_exact(const QSqrt2& lam);

// Exact identity checks; true iff the residual is exactly the zero matrix.
bool check_yang_baxter_exact_444(const QSqrt2& lam, const QSqrt2& mu);
bool check_yang_baxter_exact_544(const QSqrt2& lam, const QSqrt2& mu);
bool check_crossing_exact(const QSqrt2& lam);
bool check_unitarity_exact_44(const QSqrt2& lam);  // R(l) R21(-l) = (1-l^2)(9-l^2) I
bool check_unitarity_exact_54(const QSqrt2& lam);  // R(l) R(-l) = (25/4-l^2) I
bool check_regularity_exact();                     // R(0) = 3 P
// Spectral reconstruction (l+1)(l-3) P1 + (l-1)(l+3) P5 + (l+1)(l+3) P10 = R(l).
bool check_projector_reconstruction_exact(const QSqrt2& lam);
// First fusion rule: P1_ab R_b2(l) R_a2(l-3) P1_ab = (l^2-1)(l^2-9) P1_ab on
// the three-leg space (4x4x4, 64-dimensional).
bool check_fus1_exact(const QSqrt2& lam);

// ---------------------------------------------------------------------------
// Complex-double layer
// ---------------------------------------------------------------------------

CMat to_cmat(const ExactMatrix& m);
RMat to_rmat(const ExactMatrix& m);  // throws if any entry has nonzero imaginary part

// Cached constant operators (converted once from the exact builders).
const RMat& op_identity16();
const RMat& op_permutation();
const RMat& op_temperley();
const RMat& op_v4();
const RMat& proj1();
const RMat& proj5();
const RMat& proj10();
const RMat& proj44();   // 20x20
const RMat& proj164();  // 20x20 complement

CMat build_r44(cplx lam);
CMat build_r54(cplx lam);
RMat build_r44_real(double lam);
RMat build_r54_real(double lam);

enum class YbeKind { k444, k544 };

// Max-modulus residual of the Yang-Baxter equation on the triple space.
double check_yang_baxter(YbeKind kind, cplx lam, cplx mu);
// Max-modulus residual of R(l) - (V x I) R(-l-3)^{t2} (V^{-1} x I).
double check_crossing(cplx lam);

// Tensor-leg helpers on complex matrices (row-major legs, leftmost slowest).
CMat embed_two_leg(const CMat& op, const std::vector<int>& dims, int leg_a, int leg_b);
CMat leg_transpose(const CMat& op, int dim_a, int dim_b, int leg);

}  // namespace sp4
