#include <sp4/thermo.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <sp4/special_functions.hpp>

namespace sp4 {

namespace {

double psi(double x) { return digamma(x); }
cplx lg(cplx z) { return log_gamma(z); }

void require_strip(double lam, double lo, double hi, const char* what) {
  if (!(lam > lo && lam < hi))
    throw std::domain_error(std::string(what) + ": argument outside validity strip");
}

double quad_halfline(const std::function<double(double)>& f) {
  boost::math::quadrature::exp_sinh<double> integ;
  return integ.integrate(f, 1e-13);
}

// Overflow-safe building blocks: every exponent below is nonpositive on the
// relevant strips, so the integrands decay without intermediate huge values.
// one_minus_exp(x) = 1 - e^{-x} evaluated without cancellation.
double one_minus_exp(double x) { return -std::expm1(-x); }

// sinh(a t) as sign(a) * e^{|a| t} * one_minus_exp(2 |a| t) / 2, split so the
// caller can fold the growing factor into a decaying combination.
struct SplitSinh {
  double sign, growth;  // sinh(a t) = sign * e^{growth} * rest / 2
  double rest;
};
SplitSinh split_sinh(double a, double t) {
  const double s = a < 0 ? -1.0 : 1.0;
  return {s, std::abs(a) * t, one_minus_exp(2.0 * std::abs(a) * t)};
}

}  // namespace

cplx h_thermo(cplx lam) {
  return psi_neg2(1.0 - lam / 2.0) - psi_neg2(1.0 + lam / 2.0) +
         psi_neg2(0.5 + lam / 2.0) - psi_neg2(0.5 - lam / 2.0);
}

double omega_family5(double mu) {
  const double l = mu + 0.5;
  return (-psi(1 - l / 6) + psi(4.0 / 3 + l / 6) + psi(0.5 - l / 6) - psi(5.0 / 6 + l / 6)) / 6;
}

namespace {

// The two digamma combinations shared by both omega regions.
double omega_common(double l) {
  const double dlog1 =
      (-psi(0.5 - l / 2) + psi(0.5 + l / 2) + psi(1 - l / 2) - psi(1 + l / 2)) / 2;
  const double dlog2 =
      (psi(1.0 / 3 + l / 6) - psi(5.0 / 6 - l / 6) - psi(2.0 / 3 - l / 6) + psi(1.0 / 6 + l / 6) +
       psi(1.0 / 3 - l / 6) - psi(5.0 / 6 + l / 6) - psi(2.0 / 3 + l / 6) + psi(1.0 / 6 - l / 6)) /
      6;
  return -1.0 / 3 - (l / 3) * dlog1 - dlog2 / 3;
}

}  // namespace

double omega_region2(double lam) {
  const double l = lam;
  const double dlog3 =
      (-psi(1 - l / 6) + psi(1.5 + l / 6) - psi(2.0 / 3 - l / 6) + psi(7.0 / 6 + l / 6) -
       psi(1 + l / 6) + psi(0.5 - l / 6) - psi(2.0 / 3 + l / 6) + psi(1.0 / 6 - l / 6)) /
      6;
  return omega_common(l) + dlog3;
}

double omega_region1(double mu) {
  const double l = mu + 2;
  const double dlog3 =
      (-psi(1 - l / 6) - psi(4.0 / 3 - l / 6) - psi(2.0 / 3 - l / 6) + psi(7.0 / 6 + l / 6) +
       psi(0.5 - l / 6) + psi(1.0 / 6 - l / 6) - psi(2.0 / 3 + l / 6) + psi(5.0 / 6 - l / 6)) /
      6;
  return omega_common(l) + dlog3;
}

namespace {

// Common factor of the two kappa regions: 36 e^{-l/3} e^{(2/3) h(l)} and the
// two shared gamma blocks.
cplx kappa_common(cplx l) {
  const cplx b2 = (lg(1.0 / 3 - l / 6.0) + lg(5.0 / 6 + l / 6.0) + lg(2.0 / 3 + l / 6.0) +
                   lg(1.0 / 6 - l / 6.0) - lg(1.0 / 3 + l / 6.0) - lg(5.0 / 6 - l / 6.0) -
                   lg(2.0 / 3 - l / 6.0) - lg(1.0 / 6 + l / 6.0)) /
                  3.0;
  const cplx b3 = (l / 3.0) * (lg(1.0 - l / 2.0) + lg(1.0 + l / 2.0) - lg(0.5 - l / 2.0) -
                               lg(0.5 + l / 2.0));
  return 36.0 * std::exp(-l / 3.0 + (2.0 / 3.0) * h_thermo(l) + b2 + b3);
}

}  // namespace

cplx kappa_region2(cplx lam) {
  const cplx l = lam;
  const cplx b1 = lg(1.0 - l / 6.0) + lg(1.5 + l / 6.0) + lg(2.0 / 3 - l / 6.0) +
                  lg(7.0 / 6 + l / 6.0) - lg(1.0 + l / 6.0) - lg(0.5 - l / 6.0) -
                  lg(2.0 / 3 + l / 6.0) - lg(1.0 / 6 - l / 6.0);
  return kappa_common(l) * std::exp(b1);
}

cplx kappa_region1(cplx mu) {
  const cplx l = mu + 2.0;
  const cplx b1 = lg(1.0 - l / 6.0) + lg(4.0 / 3 - l / 6.0) + lg(2.0 / 3 - l / 6.0) +
                  lg(7.0 / 6 + l / 6.0) - lg(0.5 - l / 6.0) - lg(1.0 / 6 - l / 6.0) -
                  lg(2.0 / 3 + l / 6.0) - lg(5.0 / 6 - l / 6.0);
  return kappa_common(l) * std::exp(b1);
}

cplx kappa_family5(cplx mu) {
  const cplx l = mu + 0.5;
  return 6.0 * std::exp(lg(1.0 - l / 6.0) + lg(4.0 / 3 + l / 6.0) - lg(0.5 - l / 6.0) -
                        lg(5.0 / 6 + l / 6.0));
}

double ground_state_omega() {
  return 1.0 - 2.0 * M_PI / (9.0 * std::sqrt(3.0)) - (4.0 / 3.0) * std::log(2.0);
}

// ---------------------------------------------------------------------------
// Integral forms
// ---------------------------------------------------------------------------

namespace {

// cosh(a t) / (2 cosh(t/2) cosh(3t/2)), decaying for |a| < 2.
double even_core(double a, double t) {
  const double al = std::abs(a);
  return std::exp((al - 2.0) * t) * (1.0 + std::exp(-2.0 * al * t)) /
         ((1.0 + std::exp(-t)) * (1.0 + std::exp(-3.0 * t)));
}

// e^{-2t} cosh(t) sinh(a t) / cosh(3t/2), decaying for |a| < 5/2.
double odd_core(double a, double t) {
  const SplitSinh s = split_sinh(a, t);
  return s.sign * (std::exp(s.growth - 2.5 * t) + std::exp(s.growth - 4.5 * t)) * s.rest /
         (2.0 * (1.0 + std::exp(-3.0 * t)));
}

// e^{-2t} cosh(t) sinh(l t/2) sinh((l+3) t/2) / (t cosh(3t/2)),
// decaying for (|l| + |l+3|)/2 < 5/2.
double pair_core(double l, double t) {
  if (t == 0.0) return 0.0;
  const SplitSinh s1 = split_sinh(l / 2, t);
  const SplitSinh s2 = split_sinh((l + 3) / 2, t);
  const double g = s1.growth + s2.growth;
  return s1.sign * s2.sign * (std::exp(g - 2.5 * t) + std::exp(g - 4.5 * t)) * s1.rest * s2.rest /
         (4.0 * t * (1.0 + std::exp(-3.0 * t)));
}

// sinh(a t) / (2 t cosh(t/2) cosh(3t/2)), decaying for |a| < 2.
double odd_over_t_core(double a, double t) {
  if (t == 0.0) return a / 2;
  const SplitSinh s = split_sinh(a, t);
  return s.sign * std::exp(s.growth - 2.0 * t) * s.rest /
         (t * (1.0 + std::exp(-t)) * (1.0 + std::exp(-3.0 * t)));
}

}  // namespace

double omega_region2_integral(double lam) {
  require_strip(lam, -2.0, 1.0, "omega_region2_integral");
  const double i1 = quad_halfline([lam](double t) { return even_core(lam, t); });
  const double i2 = quad_halfline([lam](double t) { return odd_core(lam + 1.5, t); });
  return i1 - 2.0 * i2;
}

double omega_region1_integral(double lam) {
  require_strip(lam, -4.0, -1.0, "omega_region1_integral");
  const double i1 = quad_halfline([lam](double t) { return even_core(lam + 3.0, t); });
  const double i2 = quad_halfline([lam](double t) { return odd_core(lam + 1.5, t); });
  return -i1 - 2.0 * i2;
}

double omega_family5_integral(double lam) {
  require_strip(lam, -5.5, 2.5, "omega_family5_integral");
  // e^{-5t/2} sinh((lam + 3/2) t) / cosh(3t/2), decaying for |lam + 3/2| < 4
  const auto f = [lam](double t) {
    const SplitSinh s = split_sinh(lam + 1.5, t);
    return s.sign * std::exp(s.growth - 4.0 * t) * s.rest / (1.0 + std::exp(-3.0 * t));
  };
  return -quad_halfline(f);
}

double log_kappa_region2_integral(double lam) {
  require_strip(lam, -2.0, 1.0, "log_kappa_region2_integral");
  const double i1 = quad_halfline([lam](double t) { return odd_over_t_core(lam, t); });
  const double i2 = quad_halfline([lam](double t) { return pair_core(lam, t); });
  return std::log(3.0) + i1 - 4.0 * i2;
}

double log_kappa_region1_integral(double lam) {
  require_strip(lam, -4.0, -1.0, "log_kappa_region1_integral");
  const double i1 = quad_halfline([lam](double t) { return odd_over_t_core(lam + 3.0, t); });
  const double i2 = quad_halfline([lam](double t) { return pair_core(lam, t); });
  return std::log(3.0) - i1 - 4.0 * i2;
}

double log_kappa_family5_integral(double lam) {
  require_strip(lam, -5.5, 2.5, "log_kappa_family5_integral");
  // e^{-5t/2} sinh(l t/2) sinh((3+l) t/2) / (t cosh(3t/2))
  const auto f = [lam](double t) {
    if (t == 0.0) return 0.0;
    const SplitSinh s1 = split_sinh(lam / 2, t);
    const SplitSinh s2 = split_sinh((lam + 3) / 2, t);
    return s1.sign * s2.sign * std::exp(s1.growth + s2.growth - 4.0 * t) * s1.rest * s2.rest /
           (2.0 * t * (1.0 + std::exp(-3.0 * t)));
  };
  return std::log(2.5) - 2.0 * quad_halfline(f);
}

double jump_integral(double lam) {
  require_strip(lam, -2.0, -1.0, "jump_integral");
  // cosh((lam + 3/2) t) / cosh(t/2), decaying for |lam + 3/2| < 1/2
  const auto f = [lam](double t) {
    const double al = std::abs(lam + 1.5);
    return std::exp((al - 0.5) * t) * (1.0 + std::exp(-2.0 * al * t)) /
           (1.0 + std::exp(-t));
  };
  return quad_halfline(f);
}

// ---------------------------------------------------------------------------
// Dispatch and relation battery
// ---------------------------------------------------------------------------

cplx kappa_infinite(cplx lam) {
  return lam.real() >= -1.5 ? kappa_region2(lam) : kappa_region1(lam);
}

double omega_infinite(double lam) {
  return lam >= -1.5 ? omega_region2(lam) : omega_region1(lam);
}

namespace {

double rel_residual(cplx a, cplx b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

}  // namespace

std::vector<ThermoRelationReport> thermo_relation_residuals(double lam) {
  const double l = lam;
  std::vector<ThermoRelationReport> out;
  auto add = [&](const std::string& name, cplx lhs, cplx rhs) {
    out.push_back({name, l, rel_residual(lhs, rhs)});
  };

  add("kappa_inversion", kappa_region2(l) * kappa_region1(l - 3),
      cplx((l * l - 1) * (l * l - 9)));
  add("kappa_fusion", kappa_region2(l) * kappa_region2(l - 1),
      std::abs((l * l - 1) * (l + 3)) * kappa_family5(l - 0.5));
  add("kappa_mixed", kappa_region2(l) * kappa_family5(l - 2.5),
      (l + 3) * kappa_region1(l - 2));
  add("omega_inversion", omega_region2(l) + omega_region1(l - 3),
      1 / (l + 1) + 1 / (l - 1) + 1 / (l + 3) + 1 / (l - 3));
  add("omega_fusion", omega_region2(l) + omega_region2(l - 1),
      1 / (l + 1) + 1 / (l - 1) + 1 / (l + 3) + omega_family5(l - 0.5));
  add("omega_mixed", omega_region2(l) + omega_family5(l - 2.5),
      1 / (l + 3) + omega_region1(l - 2));
  add("family5_shift", omega_family5(l + 1.5) + omega_family5(l - 1.5),
      1 / (l + 4) + 1 / (l - 1));
  add("family5_unitarity", kappa_family5(l) * kappa_family5(-l), cplx(6.25 - l * l));
  add("crossing_kappa", kappa_region1(-3 - l), kappa_region2(l));
  add("crossing_kappa5", kappa_family5(l), kappa_family5(-3 - l));
  add("crossing_omega", omega_region1(-3 - l), -omega_region2(l));
  add("crossing_omega5", omega_family5(l), -omega_family5(-3 - l));
  add("jump_closed", omega_region2(l) - omega_region1(l), M_PI / std::sin(M_PI * l));
  return out;
}

ThermoRelationReport crossing_check(double lam) {
  double probe = lam;
  // 0 and -3 are a mutual simple pole of the two sides; step off the pole.
  if (std::min(std::abs(lam), std::abs(lam + 3)) < 1e-3) {
    double worst = 0.0, used = lam;
    for (double off : {1e-3, -1e-3}) {
      const double p = lam + off;
      const double r = rel_residual(kappa_region1(-3 - p), kappa_region2(p));
      if (r > worst) {
        worst = r;
        used = p;
      }
    }
    return {"crossing_kappa", used, worst};
  }
  return {"crossing_kappa", probe,
          rel_residual(kappa_region1(-3 - probe), kappa_region2(probe))};
}

}  // namespace sp4
