#include <sp4/fusion.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <mutex>
#include <sstream>

namespace sp4 {

namespace {

double max_abs(const CMat& m) { return m.cwiseAbs().maxCoeff(); }

CMat to_complex(const RMat& m) { return m.cast<cplx>(); }

// kron(g, I_q) lifted to complex.
CMat gauge_kron(const RMat& g, int q) {
  const int d = static_cast<int>(g.rows());
  CMat out = CMat::Zero(d * q, d * q);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < q; ++k) out(i * q + k, j * q + k) = g(i, j);
  return out;
}

}  // namespace

RMat projector_isometry(const RMat& proj, double drop_tol) {
  if (proj.rows() != proj.cols()) throw FusionError("projector_isometry: non-square input");
  const int d = static_cast<int>(proj.rows());
  const int expected_rank = static_cast<int>(std::llround(proj.trace()));

  std::vector<RVec> basis;
  for (int j = 0; j < d; ++j) {
    RVec v = proj.col(j);
    for (const RVec& u : basis) v -= u.dot(v) * u;
    // second pass for numerical orthogonality
    for (const RVec& u : basis) v -= u.dot(v) * u;
    const double nrm = v.norm();
    if (nrm > drop_tol) basis.push_back(v / nrm);
  }

  const int r = static_cast<int>(basis.size());
  RMat u(d, r);
  for (int j = 0; j < r; ++j) u.col(j) = basis[j];

  if (r != expected_rank) {
    std::ostringstream os;
    os << "projector_isometry: rank " << r << " != trace " << expected_rank;
    throw FusionError(os.str());
  }
  const double orth = (u.transpose() * u - RMat::Identity(r, r)).cwiseAbs().maxCoeff();
  const double range = (u * u.transpose() - proj).cwiseAbs().maxCoeff();
  if (orth > 1e-12 || range > 1e-10) {
    std::ostringstream os;
    os << "projector_isometry: invariants violated (orth " << orth << ", range " << range << ")";
    throw FusionError(os.str());
  }
  return u;
}

GaugeFit fit_intertwiner(const RMat& a, const RMat& b, int daux, int dq,
                         double sv_threshold, double residual_tol) {
  const int n = daux * dq;
  if (a.rows() != n || a.cols() != n || b.rows() != n || b.cols() != n)
    throw FusionError("fit_intertwiner: dimension mismatch");

  // Row index e = ((i*dq+p)*daux + j)*dq + q encodes one scalar equation of
  // A (G x I) - (G x I) B = 0; unknown index k*daux + j encodes G(k, j).
  RMat m = RMat::Zero(n * n, daux * daux);
  for (int i = 0; i < daux; ++i)
    for (int p = 0; p < dq; ++p)
      for (int j = 0; j < daux; ++j)
        for (int q = 0; q < dq; ++q) {
          const int e = ((i * dq + p) * daux + j) * dq + q;
          for (int k = 0; k < daux; ++k) {
            m(e, k * daux + j) += a(i * dq + p, k * dq + q);
            m(e, i * daux + k) -= b(k * dq + p, j * dq + q);
          }
        }

  Eigen::JacobiSVD<RMat> svd(m, Eigen::ComputeThinV);
  const RVec sv = svd.singularValues();
  const int nsv = static_cast<int>(sv.size());

  GaugeFit fit;
  fit.smallest_sv = sv(nsv - 1);
  fit.nullspace_gap = nsv >= 2 ? sv(nsv - 2) : 0.0;
  fit.nullity = 0;
  for (int k = 0; k < nsv; ++k)
    if (sv(k) < sv_threshold) ++fit.nullity;

  RVec gvec = svd.matrixV().col(nsv - 1);
  // Deterministic sign: first entry of non-negligible magnitude made positive.
  for (int k = 0; k < gvec.size(); ++k) {
    if (std::abs(gvec(k)) > 1e-10) {
      if (gvec(k) < 0) gvec = -gvec;
      break;
    }
  }
  fit.g = RMat(daux, daux);
  for (int k = 0; k < daux; ++k)
    for (int j = 0; j < daux; ++j) fit.g(k, j) = gvec(k * daux + j);

  const RMat gi = Eigen::kroneckerProduct(fit.g, RMat::Identity(dq, dq)).eval();
  fit.fit_residual = (a * gi - gi * b).cwiseAbs().maxCoeff() /
                     std::max(a.cwiseAbs().maxCoeff(), 1.0);

  if (fit.nullity != 1) {
    std::ostringstream os;
    os << "fit_intertwiner: nullspace dimension " << fit.nullity << " (expected 1); smallest sv "
       << fit.smallest_sv << ", gap " << fit.nullspace_gap;
    throw FusionError(os.str());
  }
  if (fit.fit_residual > residual_tol) {
    std::ostringstream os;
    os << "fit_intertwiner: residual " << fit.fit_residual << " exceeds " << residual_tol;
    throw FusionError(os.str());
  }
  return fit;
}

namespace {

const RMat& u5_isometry() {
  static const RMat u = projector_isometry(proj5());  // 16x5
  return u;
}

const RMat& u44_isometry() {
  static const RMat u = projector_isometry(proj44());  // 20x4
  return u;
}

// 64x20 compression of the two chained legs onto the rank-5 channel.
const CMat& u54_embedded() {
  static const CMat u = [] {
    RMat big = Eigen::kroneckerProduct(u5_isometry(), RMat::Identity(4, 4)).eval();
    return to_complex(big);
  }();
  return u;
}

// 80x16 compression of the mixed (5 x 4) pair onto the rank-4 channel.
const CMat& u44_embedded() {
  static const CMat u = [] {
    RMat big = Eigen::kroneckerProduct(u44_isometry(), RMat::Identity(4, 4)).eval();
    return to_complex(big);
  }();
  return u;
}

int matrix_rank(const CMat& m, double rel_tol = 1e-8) {
  Eigen::JacobiSVD<CMat> svd(m);
  const RVec sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cut = rel_tol * sv(0);
  int r = 0;
  for (int k = 0; k < sv.size(); ++k)
    if (sv(k) > cut) ++r;
  return r;
}

FusionGauges build_fusion_gauges() {
  FusionGauges g;
  g.lambda_star = 2.0;
  const double ls = g.lambda_star;

  // rule 2 at lambda*: compress R44(l) R44(l-1), target R54(l - 1/2).
  {
    const std::vector<int> dims{4, 4, 4};
    const CMat product = embed_two_leg(build_r44(ls), dims, 1, 2) *
                         embed_two_leg(build_r44(ls - 1.0), dims, 0, 2);
    const CMat p5e = embed_two_leg(to_complex(proj5()), dims, 0, 1);
    g.rank2_uncompressed = matrix_rank((p5e * product * p5e).eval());
    const CMat c = u54_embedded().adjoint() * product * u54_embedded();
    const double pref = (ls * ls - 1.0) * (ls + 3.0);
    const RMat a = c.real();
    const RMat b = pref * build_r54_real(ls - 0.5);
    g.fit5 = fit_intertwiner(a, b, 5, 4);
    g.g5 = g.fit5.g;
  }

  // rule 3 at lambda*: compress R44(l) R54(l - 5/2) on (5,4,4), target R44(l-2).
  {
    const std::vector<int> dims{5, 4, 4};
    const CMat product = embed_two_leg(build_r44(ls), dims, 1, 2) *
                         embed_two_leg(build_r54(ls - 2.5), dims, 0, 2);
    const CMat c = u44_embedded().adjoint() * product * u44_embedded();
    const double pref = ls + 3.0;
    const RMat a = c.real();
    const RMat b = pref * build_r44_real(ls - 2.0);
    g.fit4 = fit_intertwiner(a, b, 4, 4);
    g.g4 = g.fit4.g;
  }

  return g;
}

}  // namespace

const FusionGauges& fusion_gauges() {
  static const FusionGauges g = build_fusion_gauges();
  return g;
}

CMat fus1_lhs(cplx lambda) {
  const std::vector<int> dims{4, 4, 4};
  const CMat p1 = embed_two_leg(to_complex(proj1()), dims, 0, 1);
  return p1 * embed_two_leg(build_r44(lambda), dims, 1, 2) *
         embed_two_leg(build_r44(lambda - 3.0), dims, 0, 2) * p1;
}

CMat fus2_lhs_compressed(cplx lambda) {
  const std::vector<int> dims{4, 4, 4};
  const CMat product = embed_two_leg(build_r44(lambda), dims, 1, 2) *
                       embed_two_leg(build_r44(lambda - 1.0), dims, 0, 2);
  return u54_embedded().adjoint() * product * u54_embedded();
}

CMat fus3_lhs_compressed(cplx lambda) {
  const std::vector<int> dims{5, 4, 4};
  const CMat product = embed_two_leg(build_r44(lambda), dims, 1, 2) *
                       embed_two_leg(build_r54(lambda - 2.5), dims, 0, 2);
  return u44_embedded().adjoint() * product * u44_embedded();
}

FusionReport check_fusion_rule(int rule, cplx lambda, double tol) {
  FusionReport rep;
  rep.rule = rule;
  rep.lambda = lambda;
  rep.tol = tol;

  CMat lhs, rhs;
  switch (rule) {
    case 1: {
      const std::vector<int> dims{4, 4, 4};
      lhs = fus1_lhs(lambda);
      const cplx pref = (lambda * lambda - 1.0) * (lambda * lambda - 9.0);
      rhs = pref * embed_two_leg(to_complex(proj1()), dims, 0, 1);
      break;
    }
    case 2: {
      const FusionGauges& fg = fusion_gauges();
      const CMat gi = gauge_kron(fg.g5, 4);
      lhs = fus2_lhs_compressed(lambda) * gi;
      const cplx pref = (lambda * lambda - 1.0) * (lambda + 3.0);
      rhs = pref * gi * build_r54(lambda - 0.5);
      break;
    }
    case 3: {
      const FusionGauges& fg = fusion_gauges();
      const CMat gi = gauge_kron(fg.g4, 4);
      lhs = fus3_lhs_compressed(lambda) * gi;
      const cplx pref = lambda + 3.0;
      rhs = pref * gi * build_r44(lambda - 2.0);
      break;
    }
    default:
      throw FusionError("check_fusion_rule: rule must be 1, 2 or 3");
  }

  rep.lhs_scale = max_abs(lhs);
  rep.residual = max_abs(lhs - rhs) / std::max(rep.lhs_scale, 1.0);
  rep.pass = rep.residual <= tol;
  return rep;
}

double fusion_grid_residual(int rule, double lo, double hi, int n, double tol) {
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const double lam = n == 1 ? lo : lo + (hi - lo) * k / (n - 1);
    worst = std::max(worst, check_fusion_rule(rule, cplx(lam, 0.0), tol).residual);
  }
  return worst;
}

}  // namespace sp4
