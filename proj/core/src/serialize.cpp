#include "sp4/serialize.hpp"

#include <cstdio>
#include <limits>

namespace sp4 {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

nlohmann::json matrix_to_json(const CMat& m) {
  nlohmann::json out;
  out["dims"] = {m.rows(), m.cols()};
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j).real(), m(i, j).imag()});
    }
  }
  out["entries"] = std::move(entries);
  return out;
}

nlohmann::json matrix_to_json(const RMat& m) {
  nlohmann::json out;
  out["dims"] = {m.rows(), m.cols()};
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      entries.push_back({m(i, j), 0.0});
    }
  }
  out["entries"] = std::move(entries);
  return out;
}

namespace {

nlohmann::json big_int_to_json(const boost::multiprecision::cpp_int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

}  // namespace

nlohmann::json rational_to_json(const Rational& r) {
  return nlohmann::json::array(
      {big_int_to_json(numerator(r)), big_int_to_json(denominator(r))});
}

nlohmann::json exact_to_json(const QSqrt2& x) {
  nlohmann::json out;
  out["a"] = rational_to_json(x.a);
  out["b"] = rational_to_json(x.b);
  return out;
}

}  // namespace sp4
