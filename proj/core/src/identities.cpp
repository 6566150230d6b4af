#include <sp4/identities.hpp>

#include <cmath>
#include <stdexcept>

#include <sp4/spectral.hpp>
#include <sp4/transfer.hpp>

namespace sp4 {

IdentityReport identity_residual(int id, int L, double lambda) {
  IdentityReport rep;
  rep.id = id;
  rep.L = L;
  rep.lambda = lambda;
  const double l = lambda;

  double lhs = 0.0, main = 0.0;
  switch (id) {
    case 1:
      lhs = branch_eigenvalue_real(4, L, l) * branch_eigenvalue_real(4, L, l - 3.0);
      main = std::pow((l * l - 1.0) * (l * l - 9.0), L);
      break;
    case 2:
      lhs = branch_eigenvalue_real(4, L, l) * branch_eigenvalue_real(4, L, l - 1.0);
      main = std::pow((l * l - 1.0) * (l + 3.0), L) * branch_eigenvalue_real(5, L, l - 0.5);
      break;
    case 3:
      lhs = branch_eigenvalue_real(4, L, l) * branch_eigenvalue_real(5, L, l - 2.5);
      main = std::pow(l + 3.0, L) * branch_eigenvalue_real(4, L, l - 2.0);
      break;
    default:
      throw std::invalid_argument("identity_residual: id must be 1, 2 or 3");
  }

  rep.lhs = lhs;
  rep.rhs_main = main;
  rep.remainder = std::abs(lhs - main);
  rep.phi = std::pow(l, L);
  rep.normalized_remainder = rep.remainder / std::max(std::abs(rep.phi), 1e-300);
  rep.main_relative = rep.remainder / std::max(std::abs(main), 1e-300);
  return rep;
}

namespace {

void check_ident_len(int L) {
  if (L < 1 || L > 3)
    throw std::invalid_argument("dense identity forms limited to L <= 3");
}

}  // namespace

CMat identity_lhs(int id, int L, cplx lambda) {
  check_ident_len(L);
  switch (id) {
    case 1:
      return dense_transfer(4, L, lambda) * dense_transfer(4, L, lambda - 3.0);
    case 2:
      return dense_transfer(4, L, lambda) * dense_transfer(4, L, lambda - 1.0);
    case 3:
      return dense_transfer(4, L, lambda) * dense_transfer(5, L, lambda - 2.5);
    default:
      throw std::invalid_argument("identity_lhs: id must be 1, 2 or 3");
  }
}

CMat identity_rhs_main(int id, int L, cplx lambda) {
  check_ident_len(L);
  const auto n = static_cast<Eigen::Index>(physical_dim(L));
  switch (id) {
    case 1: {
      const cplx f = std::pow((lambda * lambda - 1.0) * (lambda * lambda - 9.0), L);
      return f * CMat::Identity(n, n);
    }
    case 2: {
      const cplx f = std::pow((lambda * lambda - 1.0) * (lambda + 3.0), L);
      return f * dense_transfer(5, L, lambda - 0.5);
    }
    case 3: {
      const cplx f = std::pow(lambda + 3.0, L);
      return f * dense_transfer(4, L, lambda - 2.0);
    }
    default:
      throw std::invalid_argument("identity_rhs_main: id must be 1, 2 or 3");
  }
}

namespace {

// (P (x) I_n) . M, P acting on the 16-dim auxiliary pair (row blocks of M).
CMat aux_left(const RMat& p, const CMat& m, Eigen::Index n) {
  CMat out = CMat::Zero(m.rows(), m.cols());
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      if (p(i, j) == 0.0) continue;
      out.middleRows(i * n, n) += p(i, j) * m.middleRows(j * n, n);
    }
  return out;
}

CMat aux_right(const CMat& m, const RMat& p, Eigen::Index n) {
  CMat out = CMat::Zero(m.rows(), m.cols());
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      if (p(i, j) == 0.0) continue;
      out.middleCols(j * n, n) += p(i, j) * m.middleCols(i * n, n);
    }
  return out;
}

// Partial trace over the 16-dim auxiliary pair.
CMat aux_trace(const CMat& m, Eigen::Index n) {
  CMat out = CMat::Zero(n, n);
  for (int ab = 0; ab < 16; ++ab) out += m.block(ab * n, ab * n, n, n);
  return out;
}

}  // namespace

CMat build_aux_v1(int L, cplx lambda) {
  check_ident_len(L);
  const auto n = static_cast<Eigen::Index>(physical_dim(L));
  const CMat ma = dense_monodromy(4, L, lambda - 3.0);  // auxiliary index a
  const CMat mb = dense_monodromy(4, L, lambda);        // auxiliary index b

  // joint index (a*4 + b)*n + s
  const Eigen::Index jn = 16 * n;
  CMat ja = CMat::Zero(jn, jn), jb = CMat::Zero(jn, jn);
  for (int a = 0; a < 4; ++a)
    for (int a2 = 0; a2 < 4; ++a2)
      for (int b = 0; b < 4; ++b)
        ja.block((a * 4 + b) * n, (a2 * 4 + b) * n, n, n) = ma.block(a * n, a2 * n, n, n);
  for (int b = 0; b < 4; ++b)
    for (int b2 = 0; b2 < 4; ++b2)
      for (int a = 0; a < 4; ++a)
        jb.block((a * 4 + b) * n, (a * 4 + b2) * n, n, n) = mb.block(b * n, b2 * n, n, n);

  const CMat prod = jb * ja;

  CMat corr = CMat::Zero(n, n);
  for (const RMat* p : {&proj5(), &proj10()})
    corr += aux_trace(aux_right(aux_left(*p, prod, n), *p, n), n);
  return corr;
}

double identity1_full_residual(int L, cplx lambda) {
  const CMat lhs = identity_lhs(1, L, lambda);
  const CMat rhs = identity_rhs_main(1, L, lambda) + build_aux_v1(L, lambda);
  const double scale = std::max(lhs.cwiseAbs().maxCoeff(), 1.0);
  return (lhs - rhs).cwiseAbs().maxCoeff() / scale;
}

// ---------------------------------------------------------------------------
// Exact variants at L = 2
// ---------------------------------------------------------------------------

namespace {

ExactMatrix exact_monodromy_l2(int rep, const QSqrt2& lam) {
  const int B = rep == 4 ? 4 : 5;
  const ExactMatrix r = rep == 4 ? build_r44_exact(lam) : build_r54_exact(lam);

  // two accumulation steps of the generic site recursion
  ExactMatrix m = ExactMatrix::identity(B);
  for (int site = 0; site < 2; ++site) {
    const int phys = site == 0 ? 1 : 4;
    const int dim = B * phys;
    ExactMatrix next(dim * 4, dim * 4);
    for (int arow = 0; arow < B; ++arow)
      for (int spre = 0; spre < phys; ++spre)
        for (int bcol = 0; bcol < B; ++bcol)
          for (int tpre = 0; tpre < phys; ++tpre) {
            const QSqrt2& mv = m(arow * phys + spre, bcol * phys + tpre);
            if (mv.is_zero()) continue;
            for (int sk = 0; sk < 4; ++sk)
              for (int c = 0; c < B; ++c)
                for (int tk = 0; tk < 4; ++tk) {
                  const QSqrt2& rv = r(bcol * 4 + sk, c * 4 + tk);
                  if (rv.is_zero()) continue;
                  next((arow * phys + spre) * 4 + sk, (c * phys + tpre) * 4 + tk) += mv * rv;
                }
          }
    m = next;
  }
  return m;
}

}  // namespace

ExactMatrix dense_transfer_exact_l2(int rep, const QSqrt2& lam) {
  const int B = rep == 4 ? 4 : 5;
  const ExactMatrix m = exact_monodromy_l2(rep, lam);
  const int n = 16;
  ExactMatrix t(n, n);
  for (int a = 0; a < B; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(i, j) += m(a * n + i, a * n + j);
  return t;
}

ExactMatrix build_aux_v1_exact_l2(const QSqrt2& lam) {
  const int n = 16;   // physical dimension at L = 2
  const int jn = 16 * n;
  const ExactMatrix ma = exact_monodromy_l2(4, lam - QSqrt2(3));
  const ExactMatrix mb = exact_monodromy_l2(4, lam);

  ExactMatrix ja(jn, jn), jb(jn, jn);
  for (int a = 0; a < 4; ++a)
    for (int a2 = 0; a2 < 4; ++a2)
      for (int b = 0; b < 4; ++b)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const QSqrt2& v = ma(a * n + i, a2 * n + j);
            if (!v.is_zero()) ja((a * 4 + b) * n + i, (a2 * 4 + b) * n + j) = v;
          }
  for (int b = 0; b < 4; ++b)
    for (int b2 = 0; b2 < 4; ++b2)
      for (int a = 0; a < 4; ++a)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const QSqrt2& v = mb(b * n + i, b2 * n + j);
            if (!v.is_zero()) jb((a * 4 + b) * n + i, (a * 4 + b2) * n + j) = v;
          }

  const ExactMatrix prod = jb * ja;

  const ProjectorFamily44 fam = build_projectors_44_exact();
  ExactMatrix corr(n, n);
  for (const ExactMatrix* p : {&fam.p5, &fam.p10}) {
    // (P (x) I) prod (P (x) I), assembled blockwise, then auxiliary trace
    ExactMatrix left(jn, jn);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        const QSqrt2& pv = (*p)(i, j);
        if (pv.is_zero()) continue;
        for (int r = 0; r < n; ++r)
          for (int c = 0; c < jn; ++c) {
            const QSqrt2& mv = prod(j * n + r, c);
            if (!mv.is_zero()) left(i * n + r, c) += pv * mv;
          }
      }
    ExactMatrix both(jn, jn);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) {
        const QSqrt2& pv = (*p)(i, j);
        if (pv.is_zero()) continue;
        for (int r = 0; r < jn; ++r)
          for (int c = 0; c < n; ++c) {
            const QSqrt2& mv = left(r, i * n + c);
            if (!mv.is_zero()) both(r, j * n + c) += mv * pv;
          }
      }
    for (int ab = 0; ab < 16; ++ab)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) corr(i, j) += both(ab * n + i, ab * n + j);
  }
  return corr;
}

bool check_identity1_exact_l2(const QSqrt2& lam) {
  const int L = 2;
  const ExactMatrix lhs =
      dense_transfer_exact_l2(4, lam) * dense_transfer_exact_l2(4, lam - QSqrt2(3));
  const QSqrt2 unit = (lam * lam - QSqrt2(1)) * (lam * lam - QSqrt2(9));
  QSqrt2 mainf(1);
  for (int k = 0; k < L; ++k) mainf *= unit;
  const ExactMatrix rhs = mainf * ExactMatrix::identity(16) + build_aux_v1_exact_l2(lam);
  return (lhs - rhs).is_zero();
}

}  // namespace sp4
