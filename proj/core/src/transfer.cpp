#include <sp4/transfer.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace sp4 {

int max_chain_length() {
  static const int cap = [] {
    const char* env = std::getenv("SP4_MAX_L");
    if (env == nullptr) return 12;
    const int v = std::atoi(env);
    return (v >= 1 && v <= 15) ? v : 12;
  }();
  return cap;
}

std::size_t physical_dim(int L) {
  if (L < 1 || L > max_chain_length()) {
    std::ostringstream os;
    os << "chain length " << L << " outside [1, " << max_chain_length() << "]";
    throw std::invalid_argument(os.str());
  }
  return std::size_t{1} << (2 * L);
}

namespace {

int aux_dim(int rep) {
  if (rep == 4) return 4;
  if (rep == 5) return 5;
  throw std::invalid_argument("rep must be 4 or 5");
}

// Site kernel for the sweep: K[(c,s),(b,t)] = R[(b,s),(c,t)], size 4B x 4B.
template <typename Mat>
Mat sweep_kernel(const Mat& r, int B) {
  Mat k(4 * B, 4 * B);
  for (int c = 0; c < B; ++c)
    for (int s = 0; s < 4; ++s)
      for (int b = 0; b < B; ++b)
        for (int t = 0; t < 4; ++t) k(c * 4 + s, b * 4 + t) = r(b * 4 + s, c * 4 + t);
  return k;
}

// One full transfer application: for each starting auxiliary value a, sweep
// the chain site by site on a work buffer W[b * 4^L + digits], then add the
// diagonal auxiliary slice into the output.
template <typename Scalar, typename Mat, typename Vec>
void apply_transfer_impl(const Mat& kernel, int B, int L, const Vec& x, Vec& y) {
  const std::size_t n = std::size_t{1} << (2 * L);
  constexpr std::size_t kChunk = 4096;  // gather/GEMM block width
  const int kb = 4 * B;

  using Work = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  static thread_local std::vector<Scalar> wbuf;
  wbuf.assign(static_cast<std::size_t>(B) * n, Scalar(0));
  Work gather(kb, kChunk), result(kb, kChunk);

  y.setZero(static_cast<Eigen::Index>(n));

  for (int a = 0; a < B; ++a) {
    std::fill(wbuf.begin(), wbuf.end(), Scalar(0));
    std::memcpy(wbuf.data() + static_cast<std::size_t>(a) * n, x.data(), n * sizeof(Scalar));

    for (int site = 1; site <= L; ++site) {
      const std::size_t npost = std::size_t{1} << (2 * (L - site));
      const std::size_t npre = std::size_t{1} << (2 * (site - 1));
      const std::size_t post_win = npost < kChunk ? npost : kChunk;
      const std::size_t pre_group = kChunk / post_win > 0 ? kChunk / post_win : 1;

      for (std::size_t post0 = 0; post0 < npost; post0 += post_win) {
        for (std::size_t pre0 = 0; pre0 < npre; pre0 += pre_group) {
          const std::size_t g = std::min(pre_group, npre - pre0);
          const std::size_t ncol = g * post_win;

          for (int r = 0; r < kb; ++r) {
            const std::size_t b = static_cast<std::size_t>(r) >> 2;
            const std::size_t d = static_cast<std::size_t>(r) & 3;
            Scalar* dst = gather.data() + static_cast<std::size_t>(r) * kChunk;
            const Scalar* src = wbuf.data() + b * n + d * npost + post0;
            for (std::size_t j = 0; j < g; ++j)
              std::memcpy(dst + j * post_win, src + (pre0 + j) * 4 * npost,
                          post_win * sizeof(Scalar));
          }

          result.leftCols(static_cast<Eigen::Index>(ncol)).noalias() =
              kernel * gather.leftCols(static_cast<Eigen::Index>(ncol));

          for (int r = 0; r < kb; ++r) {
            const std::size_t b = static_cast<std::size_t>(r) >> 2;
            const std::size_t d = static_cast<std::size_t>(r) & 3;
            const Scalar* src = result.data() + static_cast<std::size_t>(r) * kChunk;
            Scalar* dst = wbuf.data() + b * n + d * npost + post0;
            for (std::size_t j = 0; j < g; ++j)
              std::memcpy(dst + (pre0 + j) * 4 * npost, src + j * post_win,
                          post_win * sizeof(Scalar));
          }
        }
      }
    }

    const Scalar* slice = wbuf.data() + static_cast<std::size_t>(a) * n;
    for (std::size_t i = 0; i < n; ++i) y[static_cast<Eigen::Index>(i)] += slice[i];
  }
}

}  // namespace

void apply_transfer(int rep, int L, double lambda, const RVec& x, RVec& y) {
  const int B = aux_dim(rep);
  const std::size_t n = physical_dim(L);
  if (static_cast<std::size_t>(x.size()) != n)
    throw std::invalid_argument("apply_transfer: state size != 4^L");
  const RMat r = rep == 4 ? build_r44_real(lambda) : build_r54_real(lambda);
  apply_transfer_impl<double>(sweep_kernel(r, B), B, L, x, y);
}

void apply_transfer(int rep, int L, cplx lambda, const CVec& x, CVec& y) {
  const int B = aux_dim(rep);
  const std::size_t n = physical_dim(L);
  if (static_cast<std::size_t>(x.size()) != n)
    throw std::invalid_argument("apply_transfer: state size != 4^L");
  const CMat r = rep == 4 ? build_r44(lambda) : build_r54(lambda);
  apply_transfer_impl<cplx>(sweep_kernel(r, B), B, L, x, y);
}

namespace {

// Dense monodromy accumulation: after k sites the matrix is indexed by
// (a, d_1..d_k) on both sides; the trace over the auxiliary index yields T.
template <typename Mat>
Mat dense_monodromy_impl(const Mat& r, int B, int L) {
  using Scalar = typename Mat::Scalar;
  std::size_t dim = static_cast<std::size_t>(B);
  Mat m = Mat::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));

  for (int site = 0; site < L; ++site) {
    const std::size_t phys = dim / B;  // 4^site
    const std::size_t ndim = dim * 4;
    Mat next = Mat::Zero(static_cast<Eigen::Index>(ndim), static_cast<Eigen::Index>(ndim));
    for (std::size_t arow = 0; arow < static_cast<std::size_t>(B); ++arow)
      for (std::size_t spre = 0; spre < phys; ++spre)
        for (std::size_t bcol = 0; bcol < static_cast<std::size_t>(B); ++bcol)
          for (std::size_t tpre = 0; tpre < phys; ++tpre) {
            const Scalar mv = m(static_cast<Eigen::Index>(arow * phys + spre),
                                static_cast<Eigen::Index>(bcol * phys + tpre));
            if (mv == Scalar(0)) continue;
            for (int sk = 0; sk < 4; ++sk)
              for (int c = 0; c < B; ++c)
                for (int tk = 0; tk < 4; ++tk) {
                  const Scalar rv = r(static_cast<Eigen::Index>(bcol * 4 + sk),
                                      static_cast<Eigen::Index>(c * 4 + tk));
                  if (rv == Scalar(0)) continue;
                  next(static_cast<Eigen::Index>((arow * phys + spre) * 4 + sk),
                       static_cast<Eigen::Index>((static_cast<std::size_t>(c) * phys + tpre) * 4 +
                                                 tk)) += mv * rv;
                }
          }
    m.swap(next);
    dim = ndim;
  }
  return m;
}

template <typename Mat>
Mat dense_transfer_impl(const Mat& r, int B, int L) {
  const Mat m = dense_monodromy_impl(r, B, L);
  const std::size_t n = static_cast<std::size_t>(m.rows()) / B;  // 4^L
  Mat t = Mat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t a = 0; a < static_cast<std::size_t>(B); ++a)
    t += m.block(static_cast<Eigen::Index>(a * n), static_cast<Eigen::Index>(a * n),
                 static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  return t;
}

void check_dense_len(int L) {
  if (L < 1 || L > 5) throw std::invalid_argument("dense transfer limited to L <= 5");
}

}  // namespace

RMat dense_transfer_real(int rep, int L, double lambda) {
  check_dense_len(L);
  const int B = aux_dim(rep);
  const RMat r = rep == 4 ? build_r44_real(lambda) : build_r54_real(lambda);
  return dense_transfer_impl(r, B, L);
}

CMat dense_transfer(int rep, int L, cplx lambda) {
  check_dense_len(L);
  const int B = aux_dim(rep);
  const CMat r = rep == 4 ? build_r44(lambda) : build_r54(lambda);
  return dense_transfer_impl(r, B, L);
}

CMat dense_monodromy(int rep, int L, cplx lambda) {
  check_dense_len(L);
  const int B = aux_dim(rep);
  const CMat r = rep == 4 ? build_r44(lambda) : build_r54(lambda);
  return dense_monodromy_impl(r, B, L);
}

namespace {

template <typename Vec>
void apply_shift_impl(int L, const Vec& x, Vec& y) {
  const std::size_t n = physical_dim(L);
  if (static_cast<std::size_t>(x.size()) != n)
    throw std::invalid_argument("apply_shift: state size != 4^L");
  const std::size_t m = n / 4;
  y.resize(static_cast<Eigen::Index>(n));
  // i = b*m + r maps to source index r*4 + b: four strided sweeps
  for (std::size_t b = 0; b < 4; ++b) {
    auto* dst = y.data() + b * m;
    const auto* src = x.data() + b;
    for (std::size_t r = 0; r < m; ++r) dst[r] = src[r * 4];
  }
}

}  // namespace

void apply_shift(int L, const RVec& x, RVec& y) { apply_shift_impl(L, x, y); }
void apply_shift(int L, const CVec& x, CVec& y) { apply_shift_impl(L, x, y); }

std::pair<int, int> state_charge(std::size_t state, int L) {
  static constexpr int kQ1[4] = {1, 0, 0, -1};
  static constexpr int kQ2[4] = {0, 1, -1, 0};
  int q1 = 0, q2 = 0;
  for (int k = 0; k < L; ++k) {
    const int d = static_cast<int>(state & 3);
    q1 += kQ1[d];
    q2 += kQ2[d];
    state >>= 2;
  }
  return {q1, q2};
}

namespace {

// Cached byte mask of one charge sector.
const std::vector<std::uint8_t>& charge_mask(int L, int q1, int q2) {
  struct Key {
    int L, q1, q2;
    bool operator<(const Key& o) const {
      return std::tie(L, q1, q2) < std::tie(o.L, o.q1, o.q2);
    }
  };
  static std::map<Key, std::vector<std::uint8_t>> cache;
  const Key key{L, q1, q2};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const std::size_t n = physical_dim(L);
  std::vector<std::uint8_t> mask(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto [c1, c2] = state_charge(i, L);
    mask[i] = (c1 == q1 && c2 == q2) ? 1 : 0;
  }
  return cache.emplace(key, std::move(mask)).first->second;
}

}  // namespace

void project_charge(int L, int q1, int q2, RVec& x) {
  const std::size_t n = physical_dim(L);
  if (static_cast<std::size_t>(x.size()) != n)
    throw std::invalid_argument("project_charge: state size != 4^L");
  const auto& mask = charge_mask(L, q1, q2);
  for (std::size_t i = 0; i < n; ++i)
    if (!mask[i]) x[static_cast<Eigen::Index>(i)] = 0.0;
}

void project_momentum_zero(int L, RVec& x) {
  const std::size_t n = physical_dim(L);
  if (static_cast<std::size_t>(x.size()) != n)
    throw std::invalid_argument("project_momentum_zero: state size != 4^L");
  RVec acc = x;
  RVec cur = x;
  RVec tmp(x.size());
  for (int k = 1; k < L; ++k) {
    apply_shift(L, cur, tmp);
    cur.swap(tmp);
    acc += cur;
  }
  x = acc / static_cast<double>(L);
}

std::size_t charge_sector_dimension(int L, int q1, int q2) {
  const auto& mask = charge_mask(L, q1, q2);
  std::size_t count = 0;
  for (const auto b : mask) count += b;
  return count;
}

double transfer_commutator_residual(int rep_a, cplx lambda_a, int rep_b, cplx lambda_b, int L) {
  const CMat a = dense_transfer(rep_a, L, lambda_a);
  const CMat b = dense_transfer(rep_b, L, lambda_b);
  const CMat ab = a * b;
  const double scale = std::max(ab.cwiseAbs().maxCoeff(), 1.0);
  return (ab - b * a).cwiseAbs().maxCoeff() / scale;
}

}  // namespace sp4
