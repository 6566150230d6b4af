#pragma once
// Exact scalar field Q(sqrt(2)) — rationals adjoined sqrt(2) — and dense
// matrices over it.  All algebraic identity checks in this library run in
// this field so that "holds" means holds exactly, with no tolerance.

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sp4 {

using Rational = boost::multiprecision::cpp_rational;
using BigFloat = boost::multiprecision::cpp_bin_float_50;

// a + b*sqrt(2) with rational a, b.  Field: closed under +,-,*,/ (nonzero).
struct QSqrt2 {
  Rational a{0};
  Rational b{0};

  QSqrt2() = default;
  QSqrt2(long v) : a(v) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational v) : a(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  QSqrt2(Rational ra, Rational rb) : a(std::move(ra)), b(std::move(rb)) {}

  static QSqrt2 sqrt2() { return QSqrt2(Rational(0), Rational(1)); }
  static QSqrt2 ratio(long num, long den) { return QSqrt2(Rational(num, den)); }

  bool is_zero() const { return a == 0 && b == 0; }
  bool is_rational() const { return b == 0; }

  // Field conjugate sqrt(2) -> -sqrt(2); the norm a^2 - 2 b^2 is rational and
  // vanishes only at zero, which makes division well-defined.
  QSqrt2 conjugate() const { return QSqrt2(a, -b); }

  QSqrt2 operator-() const { return QSqrt2(-a, -b); }
  QSqrt2& operator+=(const QSqrt2& o) { a += o.a; b += o.b; return *this; }
  QSqrt2& operator-=(const QSqrt2& o) { a -= o.a; b -= o.b; return *this; }
  QSqrt2& operator*=(const QSqrt2& o) {
    Rational na = a * o.a + 2 * (b * o.b);
    Rational nb = a * o.b + b * o.a;
    a = std::move(na);
    b = std::move(nb);
    return *this;
  }
  friend QSqrt2 operator+(QSqrt2 x, const QSqrt2& y) { return x += y; }
  friend QSqrt2 operator-(QSqrt2 x, const QSqrt2& y) { return x -= y; }
  friend QSqrt2 operator*(QSqrt2 x, const QSqrt2& y) { return x *= y; }
  friend bool operator==(const QSqrt2& x, const QSqrt2& y) { return x.a == y.a && x.b == y.b; }
  friend bool operator!=(const QSqrt2& x, const QSqrt2& y) { return !(x == y); }

  QSqrt2 inverse() const {
    Rational n = a * a - 2 * (b * b);
    if (n == 0) throw std::domain_error("QSqrt2: division by zero");
    return QSqrt2(a / n, -b / n);
  }
  friend QSqrt2 operator/(const QSqrt2& x, const QSqrt2& y) { return x * y.inverse(); }
};

inline BigFloat to_bigfloat(const Rational& r) { return BigFloat(r); }

inline double to_double(const Rational& r) { return to_bigfloat(r).convert_to<double>(); }

inline double to_double(const QSqrt2& x) {
  static const BigFloat kSqrt2 = sqrt(BigFloat(2));
  BigFloat v = to_bigfloat(x.a) + to_bigfloat(x.b) * kSqrt2;
  return v.convert_to<double>();
}

inline std::complex<double> to_complex(const QSqrt2& x) { return {to_double(x), 0.0}; }

// Dense row-major matrix over Q(sqrt(2)).
class ExactMatrix {
 public:
  ExactMatrix() = default;
  ExactMatrix(int rows, int cols) : rows_(rows), cols_(cols), m_(static_cast<size_t>(rows) * cols) {}

  static ExactMatrix identity(int n) {
    ExactMatrix r(n, n);
    for (int i = 0; i < n; ++i) r(i, i) = QSqrt2(1);
    return r;
  }
  static ExactMatrix zero(int rows, int cols) { return ExactMatrix(rows, cols); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  QSqrt2& operator()(int r, int c) { return m_[static_cast<size_t>(r) * cols_ + c]; }
  const QSqrt2& operator()(int r, int c) const { return m_[static_cast<size_t>(r) * cols_ + c]; }

  ExactMatrix& operator+=(const ExactMatrix& o) {
    require_same_shape(o);
    for (size_t i = 0; i < m_.size(); ++i) m_[i] += o.m_[i];
    return *this;
  }
  ExactMatrix& operator-=(const ExactMatrix& o) {
    require_same_shape(o);
    for (size_t i = 0; i < m_.size(); ++i) m_[i] -= o.m_[i];
    return *this;
  }
  friend ExactMatrix operator+(ExactMatrix x, const ExactMatrix& y) { return x += y; }
  friend ExactMatrix operator-(ExactMatrix x, const ExactMatrix& y) { return x -= y; }

  friend ExactMatrix operator*(const QSqrt2& s, const ExactMatrix& x) {
    ExactMatrix r = x;
    for (auto& v : r.m_) v *= s;
    return r;
  }

  friend ExactMatrix operator*(const ExactMatrix& x, const ExactMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("ExactMatrix: shape mismatch in product");
    ExactMatrix r(x.rows_, y.cols_);
    for (int i = 0; i < x.rows_; ++i) {
      for (int k = 0; k < x.cols_; ++k) {
        const QSqrt2& xik = x(i, k);
        if (xik.is_zero()) continue;
        for (int j = 0; j < y.cols_; ++j) {
          const QSqrt2& ykj = y(k, j);
          if (!ykj.is_zero()) r(i, j) += xik * ykj;
        }
      }
    }
    return r;
  }

  friend bool operator==(const ExactMatrix& x, const ExactMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.m_ == y.m_;
  }

  bool is_zero() const {
    for (const auto& v : m_)
      if (!v.is_zero()) return false;
    return true;
  }

  ExactMatrix transpose() const {
    ExactMatrix r(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  QSqrt2 trace() const {
    QSqrt2 t;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  // Kronecker product, leftmost factor slowest (row-major leg order).
  friend ExactMatrix kron(const ExactMatrix& x, const ExactMatrix& y) {
    ExactMatrix r(x.rows_ * y.rows_, x.cols_ * y.cols_);
    for (int xi = 0; xi < x.rows_; ++xi)
      for (int xj = 0; xj < x.cols_; ++xj) {
        const QSqrt2& v = x(xi, xj);
        if (v.is_zero()) continue;
        for (int yi = 0; yi < y.rows_; ++yi)
          for (int yj = 0; yj < y.cols_; ++yj) {
            const QSqrt2& w = y(yi, yj);
            if (!w.is_zero()) r(xi * y.rows_ + yi, xj * y.cols_ + yj) = v * w;
          }
      }
    return r;
  }

  // Gauss-Jordan inverse over the exact field.
  ExactMatrix inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("ExactMatrix: inverse of non-square matrix");
    int n = rows_;
    ExactMatrix a = *this;
    ExactMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
      int pivot = -1;
      for (int r = col; r < n; ++r)
        if (!a(r, col).is_zero()) { pivot = r; break; }
      if (pivot < 0) throw std::domain_error("ExactMatrix: singular matrix");
      if (pivot != col) {
        for (int j = 0; j < n; ++j) {
          std::swap(a(pivot, j), a(col, j));
          std::swap(inv(pivot, j), inv(col, j));
        }
      }
      QSqrt2 inv_p = a(col, col).inverse();
      for (int j = 0; j < n; ++j) {
        a(col, j) *= inv_p;
        inv(col, j) *= inv_p;
      }
      for (int r = 0; r < n; ++r) {
        if (r == col || a(r, col).is_zero()) continue;
        QSqrt2 f = a(r, col);
        for (int j = 0; j < n; ++j) {
          a(r, j) -= f * a(col, j);
          inv(r, j) -= f * inv(col, j);
        }
      }
    }
    return inv;
  }

  double max_abs_double() const {
    double m = 0;
    for (const auto& v : m_) m = std::max(m, std::abs(to_double(v)));
    return m;
  }

 private:
  void require_same_shape(const ExactMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("ExactMatrix: shape mismatch");
  }
  int rows_ = 0, cols_ = 0;
  std::vector<QSqrt2> m_;
};

// Embed a two-leg operator onto legs (leg_a, leg_b) of a tensor-product space
// with the given leg dimensions (row-major, leftmost slowest).  op must be
// square of side dims[leg_a]*dims[leg_b], acting with leg_a as its slower leg.
ExactMatrix embed_two_leg(const ExactMatrix& op, const std::vector<int>& dims, int leg_a, int leg_b);

// Transpose a square two-leg operator on one of its legs (0 or 1).
ExactMatrix leg_transpose(const ExactMatrix& op, int dim_a, int dim_b, int leg);

}  // namespace sp4
