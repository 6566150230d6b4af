#pragma once
// Thermodynamic-limit quantities for the two transfer families: the
// per-site eigenvalue factor kappa and its logarithmic derivative omega,
// each in closed gamma-function form (globally continued) and in integral
// form (valid on an open real strip).  "Region 2" covers Re(lambda) > -3/2,
// "region 1" covers Re(lambda) < -3/2, and "family 5" is the analogous
// quantity for the five-dimensional auxiliary family.
//
// Integral-form validity strips (open intervals on the real axis):
//   region 2:  (-2, 1)      region 1:  (-4, -1)
//   family 5:  (-11/2, 5/2) jump:      (-2, -1)
// Outside its strip an integral form throws std::domain_error; the gamma
// forms evaluate everywhere away from poles.
//
// Caveat: at isolated parameter values two gamma factors of a closed form
// diverge with cancelling contributions (for example kappa_region2 at
// lambda = -1), which floating point turns into NaN.  The function value is
// finite there; evaluate via the integral form or a small offset.

#include <complex>
#include <string>
#include <vector>

#include <sp4/algebra.hpp>

namespace sp4 {

// Building block shared by the two kappa regions.
cplx h_thermo(cplx lam);

// Closed gamma/digamma forms.
double omega_region2(double lam);
double omega_region1(double lam);
double omega_family5(double lam);
cplx kappa_region2(cplx lam);
cplx kappa_region1(cplx lam);
cplx kappa_family5(cplx lam);

// omega_region2(0) in closed form: 1 - 2 pi / (9 sqrt 3) - (4/3) log 2.
double ground_state_omega();

// Integral forms.
double omega_region2_integral(double lam);
double omega_region1_integral(double lam);
double omega_family5_integral(double lam);
double log_kappa_region2_integral(double lam);
double log_kappa_region1_integral(double lam);
double log_kappa_family5_integral(double lam);
// The discontinuity integral: equals pi / sin(pi lam) on its strip.
double jump_integral(double lam);

// Region dispatch on Re(lam) vs -3/2.
cplx kappa_infinite(cplx lam);
double omega_infinite(double lam);

struct ThermoRelationReport {
  std::string name;
  double lambda_used = 0.0;
  double residual = 0.0;  // relative to max(|terms|, 1)
};

// The full battery of functional, crossing, unitarity and jump relations,
// probed at the given spectral parameter (sensible in (0, 1)).
std::vector<ThermoRelationReport> thermo_relation_residuals(double lam = 0.3);

// kappa crossing residual at lam; when lam sits on the mutual pole pair
// (0 or -3) the probe is offset by +-1e-3 and the worse residual reported.
ThermoRelationReport crossing_check(double lam);

}  // namespace sp4
