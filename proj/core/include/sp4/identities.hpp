#pragma once

// Functional identities of the transfer family. With phi = lambda^L:
//
//   id 1:  T4(l) T4(l-3)   = [(l^2-1)(l^2-9)]^L I          + phi V1(l)
//   id 2:  T4(l) T4(l-1)   = [(l^2-1)(l+3)]^L T5(l-1/2)    + phi V2(l)
//   id 3:  T4(l) T5(l-5/2) = (l+3)^L T4(l-2)               + phi V3(l)
//
// The correction term of the first identity is constructed explicitly: the
// two auxiliary spaces of the double product are paired, and the rank-5 and
// rank-10 channels of that pair are traced separately,
//   phi V1 = sum_{channel in {5, 10}} Tr_{aux pair}[ P_ch M_b(l) M_a(l-3) P_ch ].
// (The rank-1 channel reproduces the main term.)
//
// On the reference branch the identities become scalar relations between
// branch eigenvalues; the remainder there is the branch eigenvalue of the
// correction term and shrinks relative to the main term as L grows.

#include <sp4/algebra.hpp>
#include <sp4/exact.hpp>

namespace sp4 {

struct IdentityReport {
  int id = 0;
  int L = 0;
  double lambda = 0.0;
  double lhs = 0.0;       // product of branch eigenvalues
  double rhs_main = 0.0;  // closed-form main term on the branch
  double remainder = 0.0;             // |lhs - rhs_main|
  double phi = 0.0;                   // lambda^L
  double normalized_remainder = 0.0;  // remainder / |phi|
  double main_relative = 0.0;         // remainder / |rhs_main|
};

// Scalar (branch-level) residual of one identity; id in {1,2,3}.
IdentityReport identity_residual(int id, int L, double lambda);

// Dense matrix forms, L <= 3.
CMat identity_lhs(int id, int L, cplx lambda);
CMat identity_rhs_main(int id, int L, cplx lambda);

// Correction term of identity 1 including the lambda^L factor (dense, L <= 3).
CMat build_aux_v1(int L, cplx lambda);

// Max-abs residual of identity 1 with the correction term included,
// relative to max(|LHS|_max, 1); L <= 3.
double identity1_full_residual(int L, cplx lambda);

// Exact-arithmetic variants at L = 2.
ExactMatrix dense_transfer_exact_l2(int rep, const QSqrt2& lam);
ExactMatrix build_aux_v1_exact_l2(const QSqrt2& lam);
// True iff T4(l) T4(l-3) - main - phi V1 vanishes identically over Q(sqrt2).
bool check_identity1_exact_l2(const QSqrt2& lam);

}  // namespace sp4
