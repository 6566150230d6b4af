// Zero scan: synthetic-function sanity checks, then the frozen zero
// configurations of the leading transfer-eigenvalue branch on small chains.
// All branch zeros inside the scan window sit on the line Re = -3/2 and come
// in conjugate pairs whose positions were pinned at five chains.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include <sp4/zeros.hpp>

using namespace sp4;

TEST_CASE("scan finds the roots of a synthetic cubic") {
  const cplx r1(0.1, 0.2), r2(-1.7, 0.4), r3(5.0, 0.0);
  auto f = [&](cplx z) { return (z - r1) * (z - r2) * (z - r3); };
  ZeroScanOptions opt;
  opt.re_lo = -2.5;
  opt.re_hi = 1.5;
  opt.im_lo = -1.0;
  opt.im_hi = 1.0;
  const ZeroScanResult res = scan_zeros(f, opt);
  REQUIRE(res.zeros.size() == 2);
  CHECK(std::abs(res.zeros[0].lambda - r1) < 1e-10);
  CHECK(std::abs(res.zeros[1].lambda - r2) < 1e-10);
  CHECK(res.zeros[0].abs_value < 1e-10);
  CHECK(res.unconverged.empty());
  // this root set is not conjugation-symmetric, and the scan reports that
  CHECK(res.conjugation_residual > 0.1);
}

TEST_CASE("scan of a zero-free function flags nothing") {
  ZeroScanOptions opt;
  opt.re_lo = -1.0;
  opt.re_hi = 1.0;
  opt.im_lo = -1.0;
  opt.im_hi = 1.0;
  const ZeroScanResult res = scan_zeros([](cplx z) { return std::exp(z); }, opt);
  CHECK(res.zeros.empty());
  CHECK(res.flagged_cells == 0);
}

TEST_CASE("malformed rectangle is rejected") {
  ZeroScanOptions opt;
  opt.re_lo = 1.0;
  opt.re_hi = -1.0;
  CHECK_THROWS_AS((void)scan_zeros([](cplx z) { return z; }, opt), std::invalid_argument);
}

TEST_CASE("branch zeros, family 4, L = 4") {
  // At this short chain every root of the degree-8 eigenvalue polynomial
  // falls inside the window: four on the critical line and an off-line
  // crossing-symmetric quartet near the window corners.
  const ZeroScanResult res = scan_branch_zeros(4, 4);
  REQUIRE(res.zeros.size() == 8);
  int on_line = 0;
  for (const auto& z : res.zeros)
    if (std::abs(z.lambda.real() + 1.5) < 1e-8) ++on_line;
  CHECK(on_line == 4);
  auto has_zero = [&](cplx w) {
    for (const auto& z : res.zeros)
      if (std::abs(z.lambda - w) < 1e-8) return true;
    return false;
  };
  CHECK(has_zero(cplx(-1.5, 0.353819378727)));
  CHECK(has_zero(cplx(-1.5, 0.967476439622)));
  CHECK(has_zero(cplx(-3.398024189883, 0.268135074894)));
  CHECK(has_zero(cplx(0.398024189883, -0.268135074894)));
  CHECK(res.conjugation_residual < 1e-9);
  CHECK(res.crossing_residual < 1e-9);
}

TEST_CASE("branch zeros, family 4, L = 6") {
  const ZeroScanResult res = scan_branch_zeros(4, 6);
  REQUIRE(res.zeros.size() == 4);
  const double im[] = {-0.854664498953, -0.172199734138, 0.172199734138, 0.854664498953};
  for (int k = 0; k < 4; ++k) {
    CAPTURE(k);
    CHECK(std::abs(res.zeros[k].lambda.real() + 1.5) < 1e-8);
    CHECK(res.zeros[k].lambda.imag() == doctest::Approx(im[k]).epsilon(1e-7));
  }
}

TEST_CASE("branch zeros, family 4, L = 8") {
  const ZeroScanResult res = scan_branch_zeros(4, 8);
  REQUIRE(res.zeros.size() == 4);
  const double im[] = {-0.509646508437, -0.128117408729, 0.128117408729, 0.509646508437};
  for (int k = 0; k < 4; ++k) {
    CAPTURE(k);
    CHECK(std::abs(res.zeros[k].lambda.real() + 1.5) < 1e-8);
    CHECK(res.zeros[k].lambda.imag() == doctest::Approx(im[k]).epsilon(1e-7));
  }
  CHECK(res.conjugation_residual < 1e-9);
  CHECK(res.crossing_residual < 1e-9);
}

TEST_CASE("branch zeros, family 5, L = 8: none inside the window") {
  const ZeroScanResult res = scan_branch_zeros(5, 8);
  CHECK(res.zeros.empty());
}

TEST_CASE("strip report, family 4, L = 6") {
  const StripReport rep = strip_report(4, 6);
  CHECK(rep.rep == 4);
  CHECK(rep.L == 6);
  CHECK(rep.scan.zeros.size() == 4);
  CHECK(rep.zeros_on_critical_line == 4);
  CHECK(rep.max_line_deviation < 1e-7);
  // with every zero on the line, each half of the window is zero-free
  CHECK(rep.widest_free_left.first == doctest::Approx(-3.4));
  CHECK(rep.widest_free_left.second == doctest::Approx(-1.5).epsilon(1e-6));
  CHECK(rep.widest_free_right.first == doctest::Approx(-1.5).epsilon(1e-6));
  CHECK(rep.widest_free_right.second == doctest::Approx(0.4));
}

TEST_CASE("csv and gnuplot exports") {
  const ZeroScanResult res = scan_branch_zeros(4, 4);
  std::ostringstream csv;
  write_zeros_csv(csv, res);
  const std::string text = csv.str();
  CHECK(text.rfind("re,im,abs_residual\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);  // header + 8 zeros
  std::ostringstream gp;
  write_zeros_gnuplot(gp, res);
  CHECK(gp.str().find("plot '-'") != std::string::npos);
  CHECK(gp.str().find("e\n") != std::string::npos);
}
