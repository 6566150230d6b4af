#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sp4/fusion.hpp>

#include <cmath>
#include <complex>

using namespace sp4;

TEST_CASE("projector isometries: orthonormal columns spanning the channel") {
  const RMat u5 = projector_isometry(proj5());
  REQUIRE(u5.rows() == 16);
  REQUIRE(u5.cols() == 5);
  CHECK((u5.transpose() * u5 - RMat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((u5 * u5.transpose() - proj5()).cwiseAbs().maxCoeff() < 1e-12);

  const RMat u44 = projector_isometry(proj44());
  REQUIRE(u44.rows() == 20);
  REQUIRE(u44.cols() == 4);
  CHECK((u44.transpose() * u44 - RMat::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((u44 * u44.transpose() - proj44()).cwiseAbs().maxCoeff() < 1e-12);

  // rank-1 channel: a single normalized column
  const RMat u1 = projector_isometry(proj1());
  REQUIRE(u1.cols() == 1);
  CHECK(std::abs(u1.col(0).norm() - 1.0) < 1e-14);

  // identity projector: full rank, isometry is an orthogonal matrix
  const RMat ufull = projector_isometry(RMat::Identity(6, 6));
  CHECK(ufull.cols() == 6);

  // non-idempotent input must be rejected (range check fails)
  RMat bad = 0.5 * proj10();
  CHECK_THROWS_AS(projector_isometry(bad), FusionError);
}

TEST_CASE("gauge fit at the reference point: unique nullspace, known gauges") {
  const FusionGauges& fg = fusion_gauges();

  CHECK(fg.fit5.nullity == 1);
  CHECK(fg.fit4.nullity == 1);
  CHECK(fg.fit5.fit_residual < 1e-12);
  CHECK(fg.fit4.fit_residual < 1e-12);
  // the nullspace direction is well separated from the rest of the spectrum
  CHECK(fg.fit5.nullspace_gap > 1e-2);
  CHECK(fg.fit4.nullspace_gap > 1e-2);
  CHECK(fg.fit5.smallest_sv < 1e-10);
  CHECK(fg.fit4.smallest_sv < 1e-10);

  // rule-2 gauge is a multiple of the identity: I_5 / sqrt(5)
  const double inv_sqrt5 = 1.0 / std::sqrt(5.0);
  CHECK((fg.g5 - inv_sqrt5 * RMat::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-9);

  // rule-3 gauge is diagonal with entries (+-1/2), first entry opposite in
  // sign to the rest; sign normalization makes the first entry positive
  RMat g4_expected = RMat::Identity(4, 4) * (-0.5);
  g4_expected(0, 0) = 0.5;
  CHECK((fg.g4 - g4_expected).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(std::abs(std::abs(fg.g4.determinant()) - 1.0 / 16.0) < 1e-12);

  // the product being compressed in rule 2 lives entirely in a 20-dim channel
  CHECK(fg.rank2_uncompressed <= 20);
}

TEST_CASE("rule 1: rank-1 channel collapse at real and complex parameters") {
  for (cplx lam : {cplx(0.5, 0.0), cplx(-2.0, 0.0), cplx(1.3, 0.7)}) {
    const FusionReport rep = check_fusion_rule(1, lam);
    CAPTURE(lam.real());
    CAPTURE(lam.imag());
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-12);
  }
}

TEST_CASE("rule 2: compressed double product matches the 5x4 weight") {
  // reuse the lambda* = 2 gauge at other parameters
  for (cplx lam : {cplx(3.0, 0.0), cplx(-0.7, 0.0), cplx(0.4, -1.1)}) {
    const FusionReport rep = check_fusion_rule(2, lam);
    CAPTURE(lam.real());
    CAPTURE(lam.imag());
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-10);
  }
}

TEST_CASE("rule 3: mixed-leg compression matches the shifted 4x4 weight") {
  for (cplx lam : {cplx(-0.5, 0.0), cplx(2.6, 0.0), cplx(-1.2, 0.9)}) {
    const FusionReport rep = check_fusion_rule(3, lam);
    CAPTURE(lam.real());
    CAPTURE(lam.imag());
    CHECK(rep.pass);
    CHECK(rep.residual < 1e-10);
  }
}

TEST_CASE("grid sweeps: single gauge stays valid across the parameter range") {
  CHECK(fusion_grid_residual(1, -2.3, 2.7, 20) < 1e-12);
  CHECK(fusion_grid_residual(2, -2.3, 2.7, 20) < 1e-9);
  CHECK(fusion_grid_residual(3, -2.3, 2.7, 20) < 1e-9);
}

TEST_CASE("detector sanity: a wrong gauge or wrong shift is flagged") {
  // evaluating rule 2 with the wrong target shift must produce a large residual
  const cplx lam(1.7, 0.0);
  const CMat c = fus2_lhs_compressed(lam);
  const cplx pref = (lam * lam - 1.0) * (lam + 3.0);
  const FusionGauges& fg = fusion_gauges();
  CMat gi = CMat::Zero(20, 20);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 4; ++k) gi(i * 4 + k, j * 4 + k) = fg.g5(i, j);
  const double wrong =
      (c * gi - pref * gi * build_r54(lam - 1.0)).cwiseAbs().maxCoeff() /
      std::max(c.cwiseAbs().maxCoeff(), 1.0);
  CHECK(wrong > 1e-3);

  // a perturbed gauge violates the intertwiner equation
  RMat gbad = fg.g5;
  gbad(0, 1) += 1e-3;
  CMat gib = CMat::Zero(20, 20);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 4; ++k) gib(i * 4 + k, j * 4 + k) = gbad(i, j);
  const double bad =
      (c * gib - pref * gib * build_r54(lam - 0.5)).cwiseAbs().maxCoeff() /
      std::max(c.cwiseAbs().maxCoeff(), 1.0);
  CHECK(bad > 1e-6);

  CHECK_THROWS_AS(check_fusion_rule(4, lam), FusionError);
}
