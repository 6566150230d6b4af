#include <sp4/special_functions.hpp>

#include <cmath>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace sp4 {

namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178;

// Coefficients B_{2n} / (2n (2n-1)) of the Stirling series, n = 1..10.
constexpr double kStirling[] = {
    1.0 / 12,           -1.0 / 360,          1.0 / 1260,
    -1.0 / 1680,        1.0 / 1188,          -691.0 / 360360,
    1.0 / 156,          -3617.0 / 122400,    43867.0 / 244188,
    -174611.0 / 125400,
};

// Force the limit-from-above convention on the branch cut.
cplx from_above(cplx z) {
  if (z.imag() == 0.0) return cplx(z.real(), +0.0);
  return z;
}

cplx stirling_log_gamma(cplx z) {
  cplx s = (z - 0.5) * std::log(z) - z + kHalfLog2Pi;
  const cplx w2 = 1.0 / (z * z);
  cplx w = 1.0 / z;
  for (double c : kStirling) {
    s += c * w;
    w *= w2;
  }
  return s;
}

}  // namespace

cplx log_gamma(cplx z) {
  z = from_above(z);
  cplx shift(0.0, 0.0);
  while (z.real() < 8.0) {
    shift -= std::log(z);
    z = from_above(z + 1.0);
  }
  return stirling_log_gamma(z) + shift;
}

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma(double): requires x > 0");
  return boost::math::lgamma(x);
}

double digamma(double x) { return boost::math::digamma(x); }

cplx psi_neg2(cplx z) {
  z = from_above(z);
  cplx shift(0.0, 0.0);
  while (z.real() <= 0.5) {
    if (std::abs(z) > 0.0) shift -= z * std::log(z) - z + kHalfLog2Pi;
    else shift -= kHalfLog2Pi;  // z log z - z -> 0 as z -> 0
    z = from_above(z + 1.0);
  }
  boost::math::quadrature::tanh_sinh<double> integ;
  const auto re = [&](double t) { return log_gamma(t * z).real(); };
  const auto im = [&](double t) { return log_gamma(t * z).imag(); };
  const cplx integral(integ.integrate(re, 0.0, 1.0, 1e-14),
                      z.imag() == 0.0 && z.real() > 0.0
                          ? 0.0
                          : integ.integrate(im, 0.0, 1.0, 1e-14));
  return z * integral + shift;
}

double psi_neg2(double x) {
  if (x < 0.0) throw std::domain_error("psi_neg2(double): requires x >= 0");
  if (x == 0.0) return 0.0;
  double shift = 0.0;
  while (x <= 0.5) {
    shift -= x * std::log(x) - x + kHalfLog2Pi;
    x += 1.0;
  }
  boost::math::quadrature::tanh_sinh<double> integ;
  const auto f = [&](double t) { return boost::math::lgamma(t * x); };
  return x * integ.integrate(f, 0.0, 1.0, 1e-14) + shift;
}

}  // namespace sp4
