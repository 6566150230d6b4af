#pragma once
// Serialization helpers shared by the command-line tool and tests: JSON
// encodings for complex matrices and exact Q(sqrt(2)) scalars, plus a
// 17-significant-digit double formatter that round-trips exactly.

#include <complex>
#include <string>

#include <json.hpp>

#include "sp4/algebra.hpp"
#include "sp4/exact.hpp"

namespace sp4 {

// Shortest-round-trip style fixed policy: always 17 significant digits so the
// output is byte-stable across runs and platforms.
std::string format_double(double v);

// {"dims": [rows, cols], "entries": [[re, im], ...]} in row-major order.
nlohmann::json matrix_to_json(const CMat& m);
nlohmann::json matrix_to_json(const RMat& m);  // entries carry zero imag

// {"a": [num, den], "b": [num, den]} meaning a + b*sqrt(2).  Components that
// fit in 64 bits are emitted as JSON integers; anything wider falls back to
// decimal strings so nothing is silently truncated.
nlohmann::json rational_to_json(const Rational& r);
nlohmann::json exact_to_json(const QSqrt2& x);

}  // namespace sp4
