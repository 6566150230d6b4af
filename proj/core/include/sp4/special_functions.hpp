#pragma once
// Log-gamma on the cut plane, real digamma, and the order minus-two
// polygamma (the antiderivative of log-gamma, normalized to vanish at 0).
//
// Conventions: principal logarithms throughout; on the negative real axis
// (the branch cut) values are the limits from the upper half plane.  The
// complex log-gamma here agrees with the standard analytic continuation that
// is continuous off the cut, not with lgamma(|Gamma|).

#include <complex>

#include <sp4/algebra.hpp>

namespace sp4 {

// Analytic continuation via downward recurrence plus a Stirling tail.
// Poles at nonpositive integers produce infinities.
cplx log_gamma(cplx z);

// Real log-gamma, x > 0 (throws std::domain_error otherwise).
double log_gamma(double x);

// Real digamma, defined away from nonpositive integers.
double digamma(double x);

// psi_neg2(z) = integral of log_gamma from 0 to z along a straight path,
// extended to Re z <= 1/2 with the reflection-free recurrence
//   psi_neg2(z) = psi_neg2(z+1) - (z log z - z + log(2 pi)/2).
// psi_neg2(1) = log(2 pi)/2.
cplx psi_neg2(cplx z);

// Real version, x >= 0 (the value is genuinely complex for x < 0).
double psi_neg2(double x);

}  // namespace sp4
