#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sp4/algebra.hpp>

#include <chrono>
#include <random>

using namespace sp4;

namespace {

QSqrt2 random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-30, 30);
  std::uniform_int_distribution<long> den(1, 12);
  return QSqrt2(Rational(num(rng), den(rng)));
}

}  // namespace

TEST_CASE("local operator identities hold exactly") {
  LocalOpsExact ops = build_local_ops_exact();

  CHECK(ops.P * ops.P == ops.I);
  CHECK(ops.P.trace() == QSqrt2(4));
  CHECK(ops.E.trace() == QSqrt2(-4));
  // Temperley-Lieb relation with loop weight -4 in this sign convention.
  CHECK(ops.E * ops.E == QSqrt2(-4) * ops.E);
  CHECK(ops.P * ops.E == QSqrt2(-1) * ops.E);
  CHECK(ops.E * ops.P == QSqrt2(-1) * ops.E);

  // The crossing matrix squares to -1, so its inverse is its negative; the
  // inverse is still computed independently and verified.
  ExactMatrix v_inv = ops.V.inverse();
  CHECK(ops.V * v_inv == ExactMatrix::identity(4));
  CHECK(v_inv == QSqrt2(-1) * ops.V);
}

TEST_CASE("R on 4x4: regularity, degeneration points, unitarity") {
  LocalOpsExact ops = build_local_ops_exact();
  ProjectorFamily44 pf = build_projectors_44_exact();

  CHECK(check_regularity_exact());

  // R(0)/3 is a permutation matrix: entries in {0,1}, doubly stochastic.
  ExactMatrix r0 = build_r44_exact(QSqrt2(0));
  for (int i = 0; i < 16; ++i) {
    QSqrt2 row_sum, col_sum;
    for (int j = 0; j < 16; ++j) {
      QSqrt2 e = r0(i, j);
      CHECK((e == QSqrt2(0) || e == QSqrt2(3)));
      row_sum += r0(i, j);
      col_sum += r0(j, i);
    }
    CHECK(row_sum == QSqrt2(3));
    CHECK(col_sum == QSqrt2(3));
  }

  CHECK(build_r44_exact(QSqrt2(-3)) == QSqrt2(12) * pf.p1);
  CHECK(build_r44_exact(QSqrt2(-1)) == QSqrt2(-4) * pf.p5);

  CHECK(check_unitarity_exact_44(QSqrt2::ratio(1, 2)));
  CHECK(check_unitarity_exact_44(QSqrt2::ratio(-7, 3)));
}

TEST_CASE("projector family of 4x4 = 1+5+10") {
  ProjectorFamily44 pf = build_projectors_44_exact();
  const ExactMatrix id = ExactMatrix::identity(16);

  CHECK(pf.p1 * pf.p1 == pf.p1);
  CHECK(pf.p5 * pf.p5 == pf.p5);
  CHECK(pf.p10 * pf.p10 == pf.p10);
  CHECK((pf.p1 * pf.p5).is_zero());
  CHECK((pf.p5 * pf.p10).is_zero());
  CHECK((pf.p1 * pf.p10).is_zero());
  CHECK(pf.p1 + pf.p5 + pf.p10 == id);
  CHECK(pf.p1.trace() == QSqrt2(1));
  CHECK(pf.p5.trace() == QSqrt2(5));
  CHECK(pf.p10.trace() == QSqrt2(10));

  CHECK(check_projector_reconstruction_exact(QSqrt2(2)));
  CHECK(check_projector_reconstruction_exact(QSqrt2::ratio(-9, 7)));
}

TEST_CASE("projector of 5x4 = 4+16 and the fused R") {
  ExactMatrix p4 = build_p44_exact();
  ExactMatrix p16 = ExactMatrix::identity(20) - p4;

  CHECK(p4 == p4.transpose());
  CHECK(p4 * p4 == p4);
  CHECK(p4.trace() == QSqrt2(4));
  CHECK(p16 * p16 == p16);
  CHECK(p16.trace() == QSqrt2(16));
  CHECK((p4 * p16).is_zero());

  CHECK(build_r54_exact(QSqrt2::ratio(5, 2)) == QSqrt2(5) * p16);
  CHECK(build_r54_exact(QSqrt2::ratio(-5, 2)) == QSqrt2(-5) * p4);
  ExactMatrix r0 = build_r54_exact(QSqrt2(0));
  CHECK(r0 == QSqrt2::ratio(5, 2) * (p16 - p4));
  CHECK(check_unitarity_exact_54(QSqrt2(1)));
}

TEST_CASE("Yang-Baxter equations hold exactly at pinned and random points") {
  CHECK(check_yang_baxter_exact_444(QSqrt2(2), QSqrt2::ratio(1, 3)));
  CHECK(check_yang_baxter_exact_544(QSqrt2::ratio(-1, 2), QSqrt2::ratio(7, 5)));

  std::mt19937_64 rng(12345);
  for (int i = 0; i < 3; ++i) {
    QSqrt2 lam = random_rational(rng);
    QSqrt2 mu = random_rational(rng);
    CAPTURE(to_double(lam));
    CAPTURE(to_double(mu));
    CHECK(check_yang_baxter_exact_444(lam, mu));
    CHECK(check_yang_baxter_exact_544(lam, mu));
  }
}

TEST_CASE("crossing relation with the anti-diagonal V") {
  CHECK(check_crossing_exact(QSqrt2(0)));
  CHECK(check_crossing_exact(QSqrt2::ratio(-3, 2)));
  CHECK(check_crossing_exact(QSqrt2::ratio(11, 6)));
  // Float path at a complex spectral point.
  CHECK(check_crossing(cplx(1.0, 1.0)) <= 1e-12);
}

TEST_CASE("first fusion rule on the three-leg space") {
  CHECK(check_fus1_exact(QSqrt2::ratio(1, 2)));
  CHECK(check_fus1_exact(QSqrt2(-2)));
}

TEST_CASE("float Yang-Baxter residuals and perturbation detector") {
  CHECK(check_yang_baxter(YbeKind::k444, cplx(0.3, 0.2), cplx(-1.1, 0.7)) <= 1e-10);
  CHECK(check_yang_baxter(YbeKind::k544, cplx(0.9, -0.4), cplx(0.2, 0.1)) <= 1e-10);

  // Perturbing one entry of R12 by 1e-3 must push the residual above 1e-4.
  std::vector<int> dims = {4, 4, 4};
  cplx lam(2.0, 0.0), mu(1.0 / 3, 0.0);
  CMat r = build_r44(lam);
  r(5, 5) += 1e-3;
  CMat r12 = embed_two_leg(r, dims, 0, 1);
  CMat r13 = embed_two_leg(build_r44(lam + mu), dims, 0, 2);
  CMat r23 = embed_two_leg(build_r44(mu), dims, 1, 2);
  double resid = (r12 * r13 * r23 - r23 * r13 * r12).cwiseAbs().maxCoeff();
  CHECK(resid >= 1e-4);
}

TEST_CASE("tensor-leg helpers are involutive and consistent") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1, 1);
  CMat op(20, 20);
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 20; ++j) op(i, j) = cplx(dist(rng), dist(rng));

  CMat tt = leg_transpose(leg_transpose(op, 5, 4, 0), 5, 4, 0);
  CHECK((tt - op).cwiseAbs().maxCoeff() == 0.0);

  // Embedding on adjacent legs (0,1) of a two-leg space is the identity map.
  CMat same = embed_two_leg(op, {5, 4}, 0, 1);
  CHECK((same - op).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("exact Yang-Baxter throughput supports the 100-point property suite") {
  std::mt19937_64 rng(99);
  auto t0 = std::chrono::steady_clock::now();
  int n = 2;
  for (int i = 0; i < n; ++i) {
    CHECK(check_yang_baxter_exact_444(random_rational(rng), random_rational(rng)));
  }
  auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  MESSAGE("exact 444 YBE: ", dt / n, " s/point");
  CHECK(dt / n < 15.0);
}
