#pragma once

// Integer and rational linear algebra for the torus linear model.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/rational.hpp>

namespace nvfix {

using Int = std::int64_t;
using IntMatrix2 = Eigen::Matrix<Int, 2, 2>;
using Rational = boost::rational<Int>;
using RationalVec2 = std::array<Rational, 2>;

inline Int det2(const IntMatrix2 &m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

/// Builds {{a, b}, {c, d}} by rows.
inline IntMatrix2 int_matrix(Int a, Int b, Int c, Int d) {
  IntMatrix2 m;
  m << a, b, c, d;
  return m;
}

/// "p/q", "p" or "-p/q". Throws ParseError.
Rational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rational &r);
/// "[[a,b],[c,d]]".
std::string to_string(const IntMatrix2 &m);

/// Lift data of a 2-valued torus map: the covering q(x) = Qx and the lift
/// coordinate f(x) = Mx + c, both on R^2 / Z^2.
struct TorusLinearPayload {
  IntMatrix2 M = IntMatrix2::Zero();
  RationalVec2 c{Rational(0), Rational(0)};
  /// Covering matrix; derived from sigma when absent.
  std::optional<IntMatrix2> Q;
};

} // namespace nvfix
