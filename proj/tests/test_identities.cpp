// Functional relations among the two transfer-matrix families: the inversion
// relation with its traced two-channel correction term, and the two
// product-to-single-matrix relations, checked at full matrix level for small
// chains (including one exact rational check) and at branch-eigenvalue level
// for the remainder decay in the chain length.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>

#include <sp4/algebra.hpp>
#include <sp4/identities.hpp>
#include <sp4/transfer.hpp>

using namespace sp4;

TEST_CASE("inversion identity with correction closes at matrix level, L=2") {
  for (cplx lambda : {cplx(0.7, 0.0), cplx(-1.3, 0.4), cplx(0.25, -0.6)}) {
    CAPTURE(lambda.real());
    CAPTURE(lambda.imag());
    CHECK(identity1_full_residual(2, lambda) < 1e-10);
  }
}

TEST_CASE("inversion identity with correction closes at matrix level, L=3") {
  CHECK(identity1_full_residual(3, cplx(0.7, 0.0)) < 1e-10);
  CHECK(identity1_full_residual(3, cplx(-0.4, 0.3)) < 1e-10);
}

TEST_CASE("inversion identity exact over Q(sqrt2), L=2") {
  CHECK(check_identity1_exact_l2(QSqrt2(Rational(1, 2))));
  CHECK(check_identity1_exact_l2(QSqrt2(Rational(-3, 4)) + QSqrt2::sqrt2()));
}

TEST_CASE("correction term commutes with the transfer matrix, L=2") {
  const cplx lambda(0.7, 0.0);
  const CMat v1 = build_aux_v1(2, lambda);
  for (cplx mu : {cplx(0.3, 0.0), cplx(-1.1, 0.5)}) {
    const CMat t = dense_transfer(4, 2, mu);
    const CMat comm = v1 * t - t * v1;
    const double scale = std::max(v1.cwiseAbs().maxCoeff() * t.cwiseAbs().maxCoeff(), 1.0);
    CHECK(comm.cwiseAbs().maxCoeff() / scale < 1e-10);
  }
}

TEST_CASE("correction term vanishes nowhere it shouldn't: wrong channel set fails") {
  // Dropping the correction entirely must leave a visible residual.
  const cplx lambda(0.7, 0.0);
  const CMat lhs = identity_lhs(1, 2, lambda);
  const CMat rhs = identity_rhs_main(1, 2, lambda);
  const double scale = std::max(lhs.cwiseAbs().maxCoeff(), 1.0);
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() / scale > 1e-4);
}

TEST_CASE("branch-level remainders at lambda = 0.2 decay with chain length") {
  // Frozen reference values for remainder/|rhs_main| (five significant digits).
  struct Ref {
    int id;
    int L;
    double value;
  };
  const Ref refs[] = {
      {1, 4, 2.841e-2}, {1, 6, 1.489e-3}, {1, 8, 1.437e-4},
      {2, 4, 2.537e-2}, {2, 6, 1.422e-3}, {2, 8, 1.419e-4},
      {3, 4, 1.042e-2}, {3, 6, 3.353e-4}, {3, 8, 1.928e-5},
  };
  for (const auto& r : refs) {
    CAPTURE(r.id);
    CAPTURE(r.L);
    const IdentityReport rep = identity_residual(r.id, r.L, 0.2);
    CHECK(rep.main_relative == doctest::Approx(r.value).epsilon(5e-3));
  }
  // decay in L for each identity
  for (int id : {1, 2, 3}) {
    const double r4 = identity_residual(id, 4, 0.2).main_relative;
    const double r6 = identity_residual(id, 6, 0.2).main_relative;
    const double r8 = identity_residual(id, 8, 0.2).main_relative;
    CHECK(r6 < r4);
    CHECK(r8 < r6);
  }
}

TEST_CASE("remainder scales like lambda^L for small lambda") {
  // remainder(lambda) ~ C * lambda^L, so halving lambda divides it by 2^L.
  const int L = 2;
  for (int id : {1, 2, 3}) {
    CAPTURE(id);
    const double ra = identity_residual(id, L, 0.02).remainder;
    const double rb = identity_residual(id, L, 0.01).remainder;
    CHECK(ra / rb == doctest::Approx(std::pow(2.0, L)).epsilon(0.05));
  }
}

TEST_CASE("report bookkeeping fields") {
  const IdentityReport rep = identity_residual(1, 4, 0.2);
  CHECK(rep.id == 1);
  CHECK(rep.L == 4);
  CHECK(rep.phi == doctest::Approx(std::pow(0.2, 4)).epsilon(1e-12));
  CHECK(rep.normalized_remainder == doctest::Approx(rep.remainder / rep.phi).epsilon(1e-12));
  CHECK_THROWS_AS((void)identity_residual(7, 2, 0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)identity_lhs(1, 5, cplx(0.1, 0.0)), std::invalid_argument);
}
