#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sp4/serialize.hpp>

#include <cmath>
#include <string>

using namespace sp4;
using nlohmann::json;

TEST_CASE("format_double round-trips and is byte-stable") {
  for (double v : {1.0 / 3.0, 0.05, -2.6779705581305601, 3.0, 1e-300, -1.7e17, 0.0}) {
    const std::string s = format_double(v);
    CHECK(std::stod(s) == v);
    CHECK(format_double(v) == s);
  }
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(3.0) == "3");
  // 17 significant digits appear whenever the value needs them
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
}

TEST_CASE("complex matrix JSON layout is row-major with [re, im] pairs") {
  CMat m(2, 3);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = cplx(10.0 * i + j, 0.5 * j);
  const json j = matrix_to_json(m);
  CHECK(j["dims"] == json({2, 3}));
  REQUIRE(j["entries"].size() == 6);
  // entry (0,1) sits at flat index 1, entry (1,0) at flat index 3
  CHECK(j["entries"][1] == json({1.0, 0.5}));
  CHECK(j["entries"][3] == json({10.0, 0.0}));

  RMat r = RMat::Zero(2, 2);
  r(1, 0) = -4.25;
  const json jr = matrix_to_json(r);
  CHECK(jr["dims"] == json({2, 2}));
  CHECK(jr["entries"][2] == json({-4.25, 0.0}));
}

TEST_CASE("rational and exact-scalar JSON") {
  CHECK(rational_to_json(Rational(3, 4)) == json({3, 4}));
  // normalization happens in the rational type itself
  CHECK(rational_to_json(Rational(-6, 8)) == json({-3, 4}));
  CHECK(rational_to_json(Rational(0)) == json({0, 1}));

  const json x = exact_to_json(QSqrt2(Rational(1, 2), Rational(-3, 5)));
  CHECK(x["a"] == json({1, 2}));
  CHECK(x["b"] == json({-3, 5}));

  // components wider than 64 bits fall back to decimal strings
  Rational big(boost::multiprecision::cpp_int("123456789012345678901234567891"), 7);
  const json jb = rational_to_json(big);
  CHECK(jb[0].is_string());
  CHECK(jb[0].get<std::string>() == "123456789012345678901234567891");
  CHECK(jb[1] == 7);

  // round-trip through text
  const json back = json::parse(x.dump());
  CHECK(back == x);
}
