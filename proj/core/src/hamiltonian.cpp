#include <sp4/hamiltonian.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cstring>
#include <stdexcept>
#include <vector>

#include <sp4/transfer.hpp>

namespace sp4 {

ExactMatrix bond_hamiltonian_exact() {
  const LocalOpsExact ops = build_local_ops_exact();
  const QSqrt2 third = QSqrt2::ratio(1, 3);
  return third * ops.I + ops.P - third * ops.E;
}

namespace {

// Real 4x4 blocks sigma^a (x) sigma^a on an ordered qubit pair (integer entries).
using Block4 = std::array<std::array<int, 4>, 4>;

constexpr Block4 kXX{{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}}};
constexpr Block4 kYY{{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}}};
constexpr Block4 kZZ{{{1, 0, 0, 0}, {0, -1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, 1}}};
constexpr Block4 kII{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};

Block4 add(const Block4& a, const Block4& b) {
  Block4 r{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r[i][j] = a[i][j] + b[i][j];
  return r;
}

// Two-site 16x16 operator A_sigma (x) B_tau under the site split digit = 2s+t:
// row (a_i, a_j) with a = 2s + t, sigma block indexed by (s_i, s_j), tau block
// by (t_i, t_j).
ExactMatrix interleave(const Block4& a, const Block4& b) {
  ExactMatrix m(16, 16);
  for (int si = 0; si < 2; ++si)
    for (int ti = 0; ti < 2; ++ti)
      for (int sj = 0; sj < 2; ++sj)
        for (int tj = 0; tj < 2; ++tj)
          for (int si2 = 0; si2 < 2; ++si2)
            for (int ti2 = 0; ti2 < 2; ++ti2)
              for (int sj2 = 0; sj2 < 2; ++sj2)
                for (int tj2 = 0; tj2 < 2; ++tj2) {
                  const int row = (2 * si + ti) * 4 + (2 * sj + tj);
                  const int col = (2 * si2 + ti2) * 4 + (2 * sj2 + tj2);
                  const int av = a[si * 2 + sj][si2 * 2 + sj2];
                  const int bv = b[ti * 2 + tj][ti2 * 2 + tj2];
                  if (av != 0 && bv != 0) m(row, col) += QSqrt2(av * bv);
                }
  return m;
}

}  // namespace

ExactMatrix bond_hamiltonian_pauli_exact() {
  const Block4 sigma_dot = add(add(kXX, kYY), kZZ);
  const QSqrt2 half = QSqrt2::ratio(1, 2);
  const QSqrt2 sixth = QSqrt2::ratio(1, 6);

  ExactMatrix sum = interleave(sigma_dot, kII);                      // sigma.sigma
  sum += QSqrt2(2) * interleave(kII, sigma_dot);                     // 2 tau.tau
  sum -= QSqrt2(2) * (half * interleave(kII, kZZ));                  // -2 * (1/2) tauz.tauz
  sum += interleave(sigma_dot, sigma_dot);                           // (sigma.sigma)(tau.tau)
  sum += interleave(sigma_dot, kZZ);                                 // (sigma.sigma)(tauz.tauz)
  sum += QSqrt2(4) * ExactMatrix::identity(16);
  return sixth * sum;
}

const RMat& bond_hamiltonian() {
  static const RMat h = [] {
    const ExactMatrix e = bond_hamiltonian_exact();
    RMat m(16, 16);
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 16; ++j) m(i, j) = to_double(e(i, j));
    return m;
  }();
  return h;
}

namespace {

// Accumulate y += (h on digit pair) x for the bond between adjacent sites
// (k, k+1), 0-based digit positions; digit k has stride 4^(L-1-k).
void accumulate_adjacent_bond(const RMat& h, int L, int k, const RVec& x, RVec& y) {
  const std::size_t npost = std::size_t{1} << (2 * (L - 2 - k));
  const std::size_t npre = std::size_t{1} << (2 * k);
  constexpr std::size_t kChunk = 4096;
  const std::size_t post_win = npost < kChunk ? npost : kChunk;
  const std::size_t pre_group = kChunk / post_win > 0 ? kChunk / post_win : 1;

  using Work = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Work gather(16, kChunk), result(16, kChunk);

  for (std::size_t post0 = 0; post0 < npost; post0 += post_win) {
    for (std::size_t pre0 = 0; pre0 < npre; pre0 += pre_group) {
      const std::size_t g = std::min(pre_group, npre - pre0);
      const std::size_t ncol = g * post_win;

      for (int u = 0; u < 16; ++u) {
        double* dst = gather.data() + static_cast<std::size_t>(u) * kChunk;
        const double* src = x.data() + static_cast<std::size_t>(u) * npost + post0;
        for (std::size_t j = 0; j < g; ++j)
          std::memcpy(dst + j * post_win, src + (pre0 + j) * 16 * npost,
                      post_win * sizeof(double));
      }

      result.leftCols(static_cast<Eigen::Index>(ncol)).noalias() =
          h * gather.leftCols(static_cast<Eigen::Index>(ncol));

      for (int u = 0; u < 16; ++u) {
        const double* src = result.data() + static_cast<std::size_t>(u) * kChunk;
        double* dst = y.data() + static_cast<std::size_t>(u) * npost + post0;
        for (std::size_t j = 0; j < g; ++j) {
          double* out = dst + (pre0 + j) * 16 * npost;
          const double* in = src + j * post_win;
          for (std::size_t p = 0; p < post_win; ++p) out[p] += in[p];
        }
      }
    }
  }
}

// Accumulate y += (h on the wrap-around pair (L-1, 0)) x; the pair index is
// d_{L-1} * 4 + d_0 with strides 1 and 4^(L-1).
void accumulate_wrap_bond(const RMat& h, int L, const RVec& x, RVec& y) {
  const std::size_t m = std::size_t{1} << (2 * (L - 1));
  const std::size_t nmid = m / 4;
  double v[16], w[16];
  for (std::size_t mid = 0; mid < nmid; ++mid) {
    const std::size_t base = mid * 4;
    for (int dlast = 0; dlast < 4; ++dlast)
      for (int d0 = 0; d0 < 4; ++d0)
        v[dlast * 4 + d0] = x[static_cast<Eigen::Index>(static_cast<std::size_t>(d0) * m + base +
                                                        static_cast<std::size_t>(dlast))];
    for (int r = 0; r < 16; ++r) {
      double s = 0.0;
      for (int c = 0; c < 16; ++c) s += h(r, c) * v[c];
      w[r] = s;
    }
    for (int dlast = 0; dlast < 4; ++dlast)
      for (int d0 = 0; d0 < 4; ++d0)
        y[static_cast<Eigen::Index>(static_cast<std::size_t>(d0) * m + base +
                                    static_cast<std::size_t>(dlast))] += w[dlast * 4 + d0];
  }
}

}  // namespace

void apply_hamiltonian(int L, const RVec& x, RVec& y) {
  const std::size_t n = physical_dim(L);
  if (static_cast<std::size_t>(x.size()) != n)
    throw std::invalid_argument("apply_hamiltonian: state size != 4^L");
  if (L < 2) throw std::invalid_argument("apply_hamiltonian: L >= 2 required");
  const RMat& h = bond_hamiltonian();
  y.setZero(static_cast<Eigen::Index>(n));
  for (int k = 0; k + 1 < L; ++k) accumulate_adjacent_bond(h, L, k, x, y);
  accumulate_wrap_bond(h, L, x, y);
}

RMat dense_hamiltonian(int L) {
  if (L < 2 || L > 6) throw std::invalid_argument("dense_hamiltonian: L in [2, 6]");
  const std::size_t n = physical_dim(L);
  const RMat& h = bond_hamiltonian();
  RMat out = RMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));

  for (int k = 0; k < L; ++k) {
    const int i = k;
    const int j = (k + 1) % L;
    const std::size_t stride_i = std::size_t{1} << (2 * (L - 1 - i));
    const std::size_t stride_j = std::size_t{1} << (2 * (L - 1 - j));
    for (std::size_t col = 0; col < n; ++col) {
      const int di = static_cast<int>((col / stride_i) & 3);
      const int dj = static_cast<int>((col / stride_j) & 3);
      const std::size_t rest = col - static_cast<std::size_t>(di) * stride_i -
                               static_cast<std::size_t>(dj) * stride_j;
      const int u = di * 4 + dj;
      for (int di2 = 0; di2 < 4; ++di2)
        for (int dj2 = 0; dj2 < 4; ++dj2) {
          const double hv = h(di2 * 4 + dj2, u);
          if (hv == 0.0) continue;
          const std::size_t row = rest + static_cast<std::size_t>(di2) * stride_i +
                                  static_cast<std::size_t>(dj2) * stride_j;
          out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += hv;
        }
    }
  }
  return out;
}

}  // namespace sp4
