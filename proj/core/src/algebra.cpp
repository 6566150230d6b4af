#include "sp4/algebra.hpp"

#include <array>
#include <stdexcept>

namespace sp4 {

namespace {

constexpr std::array<int, 4> kEps = {1, 1, -1, -1};

ExactMatrix build_permutation16() {
  ExactMatrix p(16, 16);
  for (int a = 0; a < 4; ++a)
    for (int c = 0; c < 4; ++c) p(a * 4 + c, c * 4 + a) = QSqrt2(1);
  return p;
}

ExactMatrix build_temperley16() {
  // E = -u u^T with u supported on the paired states |a>|3-a>, signs eps_a.
  std::array<long, 16> u{};
  for (int a = 0; a < 4; ++a) u[a * 4 + (3 - a)] = kEps[a];
  ExactMatrix e(16, 16);
  for (int r = 0; r < 16; ++r) {
    if (u[r] == 0) continue;
    for (int c = 0; c < 16; ++c) {
      if (u[c] == 0) continue;
      e(r, c) = QSqrt2(-u[r] * u[c]);
    }
  }
  return e;
}

ExactMatrix build_v4() {
  // Anti-diagonal entries 1,1,-1,-1 listed from the top-right corner.
  ExactMatrix v(4, 4);
  v(0, 3) = QSqrt2(1);
  v(1, 2) = QSqrt2(1);
  v(2, 1) = QSqrt2(-1);
  v(3, 0) = QSqrt2(-1);
  return v;
}

}  // namespace

LocalOpsExact build_local_ops_exact() {
  return LocalOpsExact{ExactMatrix::identity(16), build_permutation16(), build_temperley16(),
                       build_v4()};
}

ExactMatrix build_r44_exact(const QSqrt2& lam) {
  static const LocalOpsExact ops = build_local_ops_exact();
  QSqrt2 lp3 = lam + QSqrt2(3);
  ExactMatrix r = (lam * lp3) * ops.I;
  r += lp3 * ops.P;
  r += lam * ops.E;
  return r;
}

ProjectorFamily44 build_projectors_44_exact() {
  static const LocalOpsExact ops = build_local_ops_exact();
  const QSqrt2 half = QSqrt2::ratio(1, 2);
  const QSqrt2 quarter = QSqrt2::ratio(1, 4);
  ExactMatrix p1 = QSqrt2::ratio(-1, 4) * ops.E;
  ExactMatrix p5 = half * (ops.I - ops.P) + quarter * ops.E;
  ExactMatrix p10 = half * (ops.I + ops.P);
  return ProjectorFamily44{p1, p5, p10};
}

ExactMatrix build_p44_exact() {
  // Row data of the printed 20x20 projector: basis index 4(a-1)+c for the
  // 5-leg value a in 1..5 and 4-leg value c in 1..4; entries are fifths of
  // {0, +-1, +-2, +-sqrt2}.  's' marks a sqrt(2) numerator.
  struct Entry {
    int col;
    int num;      // rational numerator (fifths)
    int num_s2;   // sqrt(2) numerator (fifths)
  };
  struct Row {
    int row;
    std::vector<Entry> entries;
  };
  static const std::vector<Row> kRows = {
      {3, {{3, 2, 0}, {6, -2, 0}, {9, 0, -1}}},
      {4, {{4, 2, 0}, {10, 0, -1}, {13, 2, 0}}},
      {6, {{3, -2, 0}, {6, 2, 0}, {9, 0, 1}}},
      {8, {{8, 2, 0}, {11, 0, -1}, {17, 2, 0}}},
      {9, {{3, 0, -1}, {6, 0, 1}, {9, 1, 0}}},
      {10, {{4, 0, -1}, {10, 1, 0}, {13, 0, -1}}},
      {11, {{8, 0, -1}, {11, 1, 0}, {17, 0, -1}}},
      {12, {{12, 1, 0}, {15, 0, 1}, {18, 0, -1}}},
      {13, {{4, 2, 0}, {10, 0, -1}, {13, 2, 0}}},
      {15, {{12, 0, 1}, {15, 2, 0}, {18, -2, 0}}},
      {17, {{8, 2, 0}, {11, 0, -1}, {17, 2, 0}}},
      {18, {{12, 0, -1}, {15, -2, 0}, {18, 2, 0}}},
  };
  ExactMatrix p(20, 20);
  for (const auto& row : kRows)
    for (const auto& e : row.entries)
      p(row.row - 1, e.col - 1) = QSqrt2(Rational(e.num, 5), Rational(e.num_s2, 5));
  return p;
}

ExactMatrix build_r54_exact(const QSqrt2& lam) {
  static const ExactMatrix p4 = build_p44_exact();
  static const ExactMatrix p16 = ExactMatrix::identity(20) - p4;
  const QSqrt2 kFiveHalves = QSqrt2::ratio(5, 2);
  ExactMatrix r = (lam - kFiveHalves) * p4;
  r += (lam + kFiveHalves) * p16;
  return r;
}

ExactMatrix embed_two_leg(const ExactMatrix& op, const std::vector<int>& dims, int leg_a,
                          int leg_b) {
  const int n_legs = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) total *= d;
  const int da = dims[leg_a], db = dims[leg_b];
  if (op.rows() != da * db || op.cols() != da * db)
    throw std::invalid_argument("embed_two_leg: operator side must equal dim_a*dim_b");

  // Strides of each leg in the row-major composite index.
  std::vector<long> stride(n_legs, 1);
  for (int k = n_legs - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  ExactMatrix out(static_cast<int>(total), static_cast<int>(total));
  // Enumerate the "spectator" part of the index by looping over all composite
  // indices whose (leg_a, leg_b) digits are zero.
  for (long base = 0; base < total; ++base) {
    long ra = (base / stride[leg_a]) % da;
    long rb = (base / stride[leg_b]) % db;
    if (ra != 0 || rb != 0) continue;
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) {
        long row = base + i * stride[leg_a] + j * stride[leg_b];
        for (int k = 0; k < da; ++k)
          for (int l = 0; l < db; ++l) {
            const QSqrt2& v = op(i * db + j, k * db + l);
            if (v.is_zero()) continue;
            long col = base + k * stride[leg_a] + l * stride[leg_b];
            out(static_cast<int>(row), static_cast<int>(col)) = v;
          }
      }
  }
  return out;
}

ExactMatrix leg_transpose(const ExactMatrix& op, int dim_a, int dim_b, int leg) {
  if (op.rows() != dim_a * dim_b || op.cols() != dim_a * dim_b)
    throw std::invalid_argument("leg_transpose: shape mismatch");
  ExactMatrix out(op.rows(), op.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int c = 0; c < dim_b; ++c)
      for (int b = 0; b < dim_a; ++b)
        for (int d = 0; d < dim_b; ++d) {
          const QSqrt2& v = op(a * dim_b + c, b * dim_b + d);
          if (v.is_zero()) continue;
          if (leg == 0)
            out(b * dim_b + c, a * dim_b + d) = v;
          else
            out(a * dim_b + d, b * dim_b + c) = v;
        }
  return out;
}

bool check_yang_baxter_exact_444(const QSqrt2& lam, const QSqrt2& mu) {
  const std::vector<int> dims = {4, 4, 4};
  ExactMatrix r12 = embed_two_leg(build_r44_exact(lam), dims, 0, 1);
  ExactMatrix r13 = embed_two_leg(build_r44_exact(lam + mu), dims, 0, 2);
  ExactMatrix r23 = embed_two_leg(build_r44_exact(mu), dims, 1, 2);
  ExactMatrix lhs = r12 * r13 * r23;
  ExactMatrix rhs = r23 * r13 * r12;
  return (lhs - rhs).is_zero();
}

bool check_yang_baxter_exact_544(const QSqrt2& lam, const QSqrt2& mu) {
  const std::vector<int> dims = {5, 4, 4};
  ExactMatrix r12 = embed_two_leg(build_r54_exact(lam), dims, 0, 1);
  ExactMatrix r13 = embed_two_leg(build_r54_exact(lam + mu), dims, 0, 2);
  ExactMatrix r23 = embed_two_leg(build_r44_exact(mu), dims, 1, 2);
  ExactMatrix lhs = r12 * r13 * r23;
  ExactMatrix rhs = r23 * r13 * r12;
  return (lhs - rhs).is_zero();
}

bool check_crossing_exact(const QSqrt2& lam) {
  static const LocalOpsExact ops = build_local_ops_exact();
  static const ExactMatrix id4 = ExactMatrix::identity(4);
  static const ExactMatrix v_inv = ops.V.inverse();
  ExactMatrix lhs = build_r44_exact(lam);
  ExactMatrix transposed = leg_transpose(build_r44_exact(-lam - QSqrt2(3)), 4, 4, 1);
  ExactMatrix rhs = kron(ops.V, id4) * transposed * kron(v_inv, id4);
  return lhs == rhs;
}

bool check_unitarity_exact_44(const QSqrt2& lam) {
  static const LocalOpsExact ops = build_local_ops_exact();
  ExactMatrix r21 = ops.P * build_r44_exact(-lam) * ops.P;
  ExactMatrix lhs = build_r44_exact(lam) * r21;
  QSqrt2 one(1), nine(9);
  QSqrt2 scalar = (one - lam * lam) * (nine - lam * lam);
  return lhs == scalar * ops.I;
}

bool check_unitarity_exact_54(const QSqrt2& lam) {
  ExactMatrix lhs = build_r54_exact(lam) * build_r54_exact(-lam);
  QSqrt2 scalar = QSqrt2::ratio(25, 4) - lam * lam;
  return lhs == scalar * ExactMatrix::identity(20);
}

bool check_regularity_exact() {
  static const LocalOpsExact ops = build_local_ops_exact();
  return build_r44_exact(QSqrt2(0)) == QSqrt2(3) * ops.P;
}

bool check_projector_reconstruction_exact(const QSqrt2& lam) {
  ProjectorFamily44 pf = build_projectors_44_exact();
  QSqrt2 one(1), three(3);
  ExactMatrix rhs = ((lam + one) * (lam - three)) * pf.p1;
  rhs += ((lam - one) * (lam + three)) * pf.p5;
  rhs += ((lam + one) * (lam + three)) * pf.p10;
  return rhs == build_r44_exact(lam);
}

bool check_fus1_exact(const QSqrt2& lam) {
  const std::vector<int> dims = {4, 4, 4};
  ProjectorFamily44 pf = build_projectors_44_exact();
  ExactMatrix p1 = embed_two_leg(pf.p1, dims, 0, 1);
  ExactMatrix rb2 = embed_two_leg(build_r44_exact(lam), dims, 1, 2);
  ExactMatrix ra2 = embed_two_leg(build_r44_exact(lam - QSqrt2(3)), dims, 0, 2);
  ExactMatrix lhs = p1 * rb2 * ra2 * p1;
  QSqrt2 one(1), nine(9);
  QSqrt2 scalar = (lam * lam - one) * (lam * lam - nine);
  return lhs == scalar * p1;
}

// ---------------------------------------------------------------------------
// Complex-double layer
// ---------------------------------------------------------------------------

CMat to_cmat(const ExactMatrix& m) {
  CMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = to_complex(m(i, j));
  return out;
}

RMat to_rmat(const ExactMatrix& m) {
  RMat out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = to_double(m(i, j));
  return out;
}

const RMat& op_identity16() {
  static const RMat m = RMat::Identity(16, 16);
  return m;
}
const RMat& op_permutation() {
  static const RMat m = to_rmat(build_local_ops_exact().P);
  return m;
}
const RMat& op_temperley() {
  static const RMat m = to_rmat(build_local_ops_exact().E);
  return m;
}
const RMat& op_v4() {
  static const RMat m = to_rmat(build_local_ops_exact().V);
  return m;
}
const RMat& proj1() {
  static const RMat m = to_rmat(build_projectors_44_exact().p1);
  return m;
}
const RMat& proj5() {
  static const RMat m = to_rmat(build_projectors_44_exact().p5);
  return m;
}
const RMat& proj10() {
  static const RMat m = to_rmat(build_projectors_44_exact().p10);
  return m;
}
const RMat& proj44() {
  static const RMat m = to_rmat(build_p44_exact());
  return m;
}
const RMat& proj164() {
  static const RMat m = RMat::Identity(20, 20) - proj44();
  return m;
}

CMat build_r44(cplx lam) {
  return lam * (lam + 3.0) * op_identity16().cast<cplx>() + (lam + 3.0) * op_permutation().cast<cplx>() +
         lam * op_temperley().cast<cplx>();
}

CMat build_r54(cplx lam) {
  return (lam - 2.5) * proj44().cast<cplx>() + (lam + 2.5) * proj164().cast<cplx>();
}

RMat build_r44_real(double lam) {
  return lam * (lam + 3.0) * op_identity16() + (lam + 3.0) * op_permutation() +
         lam * op_temperley();
}

RMat build_r54_real(double lam) { return (lam - 2.5) * proj44() + (lam + 2.5) * proj164(); }

CMat embed_two_leg(const CMat& op, const std::vector<int>& dims, int leg_a, int leg_b) {
  const int n_legs = static_cast<int>(dims.size());
  long total = 1;
  for (int d : dims) total *= d;
  const int da = dims[leg_a], db = dims[leg_b];
  std::vector<long> stride(n_legs, 1);
  for (int k = n_legs - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  CMat out = CMat::Zero(total, total);
  for (long base = 0; base < total; ++base) {
    long ra = (base / stride[leg_a]) % da;
    long rb = (base / stride[leg_b]) % db;
    if (ra != 0 || rb != 0) continue;
    for (int i = 0; i < da; ++i)
      for (int j = 0; j < db; ++j) {
        long row = base + i * stride[leg_a] + j * stride[leg_b];
        for (int k = 0; k < da; ++k)
          for (int l = 0; l < db; ++l) {
            long col = base + k * stride[leg_a] + l * stride[leg_b];
            out(row, col) = op(i * db + j, k * db + l);
          }
      }
  }
  return out;
}

CMat leg_transpose(const CMat& op, int dim_a, int dim_b, int leg) {
  CMat out(op.rows(), op.cols());
  for (int a = 0; a < dim_a; ++a)
    for (int c = 0; c < dim_b; ++c)
      for (int b = 0; b < dim_a; ++b)
        for (int d = 0; d < dim_b; ++d) {
          cplx v = op(a * dim_b + c, b * dim_b + d);
          if (leg == 0)
            out(b * dim_b + c, a * dim_b + d) = v;
          else
            out(a * dim_b + d, b * dim_b + c) = v;
        }
  return out;
}

double check_yang_baxter(YbeKind kind, cplx lam, cplx mu) {
  std::vector<int> dims = kind == YbeKind::k444 ? std::vector<int>{4, 4, 4} : std::vector<int>{5, 4, 4};
  CMat r12 = kind == YbeKind::k444 ? embed_two_leg(build_r44(lam), dims, 0, 1)
                                   : embed_two_leg(build_r54(lam), dims, 0, 1);
  CMat r13 = kind == YbeKind::k444 ? embed_two_leg(build_r44(lam + mu), dims, 0, 2)
                                   : embed_two_leg(build_r54(lam + mu), dims, 0, 2);
  CMat r23 = embed_two_leg(build_r44(mu), dims, 1, 2);
  CMat resid = r12 * r13 * r23 - r23 * r13 * r12;
  return resid.cwiseAbs().maxCoeff();
}

double check_crossing(cplx lam) {
  static const CMat v16 = [] {
    CMat m = CMat::Zero(16, 16);
    RMat v = op_v4();
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) m(a * 4 + c, b * 4 + c) = v(a, b);
    return m;
  }();
  static const CMat v16_inv = [] {
    ExactMatrix vi = build_local_ops_exact().V.inverse();
    CMat m = CMat::Zero(16, 16);
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b)
        for (int c = 0; c < 4; ++c) m(a * 4 + c, b * 4 + c) = to_complex(vi(a, b));
    return m;
  }();
  CMat rhs = v16 * leg_transpose(build_r44(-lam - 3.0), 4, 4, 1) * v16_inv;
  CMat resid = build_r44(lam) - rhs;
  return resid.cwiseAbs().maxCoeff();
}

}  // namespace sp4
