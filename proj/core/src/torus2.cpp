#include "nvfix/torus2.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <limits>
#include <sstream>
#include <utility>

#include <Eigen/LU>

#include "nvfix/numerics.hpp"

namespace nvfix {

Rational parse_rational(std::string_view text) {
  auto parse_int = [&](std::string_view s) -> Int {
    if (s.empty())
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    std::size_t pos = 0;
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
      neg = s[0] == '-';
      pos = 1;
    }
    if (pos == s.size())
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
    Int v = 0;
    for (; pos < s.size(); ++pos) {
      if (s[pos] < '0' || s[pos] > '9' || v > (Int{1} << 40))
        throw Error(ErrorCode::ParseError, "bad rational '" + std::string(text) + "'");
      v = v * 10 + (s[pos] - '0');
    }
    return neg ? -v : v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos)
    return Rational(parse_int(text));
  const Int den = parse_int(text.substr(slash + 1));
  if (den == 0)
    throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string to_string(const Rational &r) {
  if (r.denominator() == 1)
    return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const IntMatrix2 &m) {
  std::ostringstream os;
  os << "[[" << m(0, 0) << ',' << m(0, 1) << "],[" << m(1, 0) << ',' << m(1, 1) << "]]";
  return os.str();
}

namespace {

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0)))
    --q;
  return q;
}

struct Bezout {
  Int g, x, y; // g = x a + y b, g >= 0
};

Bezout bezout(Int a, Int b) {
  Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const Int q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
    old_t = std::exchange(t, old_t - q * t);
  }
  if (old_r < 0)
    return {-old_r, -old_s, -old_t};
  return {old_r, old_s, old_t};
}

} // namespace

IntMatrix2 hermite_normal_form(const IntMatrix2 &basis) {
  if (det2(basis) == 0)
    throw Error(ErrorCode::SingularCovering, "basis " + to_string(basis) + " is singular");
  const Int a21 = basis(1, 0), a22 = basis(1, 1);
  const auto e = bezout(a21, a22);
  const Int g = e.g;
  // Column operation with det 1 clearing the (2,1) entry.
  IntMatrix2 U;
  U << a22 / g, e.x, -a21 / g, e.y;
  IntMatrix2 H = basis * U;
  if (H(1, 1) < 0)
    H.col(1) = -H.col(1);
  if (H(0, 0) < 0)
    H.col(0) = -H.col(0);
  H.col(1) -= floor_div(H(0, 1), H(0, 0)) * H.col(0);
  return H;
}

std::array<Int, 2> smith_diagonal(const IntMatrix2 &m) {
  IntMatrix2 a = m;
  // Euclid on rows and columns until the pivot divides everything.
  for (;;) {
    // move the smallest non-zero entry to (0,0)
    int br = -1, bc = -1;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        if (a(r, c) != 0 && (br < 0 || std::llabs(a(r, c)) < std::llabs(a(br, bc)))) {
          br = r;
          bc = c;
        }
    if (br < 0)
      return {0, 0};
    if (br != 0)
      a.row(0).swap(a.row(1));
    if (bc != 0)
      a.col(0).swap(a.col(1));
    const Int p = a(0, 0);
    bool changed = false;
    if (a(1, 0) != 0) {
      a.row(1) -= (a(1, 0) / p) * a.row(0);
      changed = changed || a(1, 0) != 0;
    }
    if (a(0, 1) != 0) {
      a.col(1) -= (a(0, 1) / p) * a.col(0);
      changed = changed || a(0, 1) != 0;
    }
    if (changed)
      continue;
    if (a(1, 1) % p != 0) {
      a.row(0) += a.row(1);
      continue;
    }
    return {std::llabs(p), std::llabs(a(1, 1))};
  }
}

IntMatrix2 kernel_lattice(const Permutation &s1, const Permutation &s2) {
  if (s1.degree() != 2 || s2.degree() != 2)
    throw Error(ErrorCode::DegreeMismatch, "kernel_lattice needs permutations of S_2");
  const bool t1 = !s1.is_identity(), t2 = !s2.is_identity();
  if (!t1 && !t2)
    throw Error(ErrorCode::SplitInput, "sigma is trivial; the covering is trivial");
  if (t1 && !t2)
    return hermite_normal_form(int_matrix(2, 0, 0, 1));
  if (!t1 && t2)
    return hermite_normal_form(int_matrix(1, 0, 0, 2));
  return hermite_normal_form(int_matrix(2, 1, 0, 1));
}

Int lefschetz_coincidence(const IntMatrix2 &Q, const IntMatrix2 &M) {
  if (det2(Q) == 0)
    throw Error(ErrorCode::SingularCovering, "covering matrix " + to_string(Q) + " is singular");
  return det2(M - Q);
}

std::optional<Int> coincidence_count_oracle(const IntMatrix2 &Q, const IntMatrix2 &M,
                                            const RationalVec2 &) {
  // A nonsingular integer system (M - Q)x = -c mod Z^2 is always solvable
  // on the torus, with d1 * d2 solutions; c only translates them.
  const IntMatrix2 A = M - Q;
  if (det2(A) == 0)
    return std::nullopt;
  const auto d = smith_diagonal(A);
  return d[0] * d[1];
}

std::vector<RationalVec2> enumerate_coincidences(const IntMatrix2 &Q,
                                                 const IntMatrix2 &M,
                                                 const RationalVec2 &c) {
  const IntMatrix2 A = M - Q;
  const Int det = det2(A);
  if (det == 0)
    throw Error(ErrorCode::SingularCovering, "M - Q is singular");
  // Integer points k of A[0,1)^2 + c; x = A^-1 (k - c).
  Rational lo[2], hi[2];
  for (int r = 0; r < 2; ++r) {
    lo[r] = hi[r] = c[r];
    for (int col = 0; col < 2; ++col) {
      if (A(r, col) < 0)
        lo[r] += A(r, col);
      else
        hi[r] += A(r, col);
    }
  }
  std::vector<RationalVec2> out;
  const Int k0min = floor_div(lo[0].numerator(), lo[0].denominator());
  const Int k1min = floor_div(lo[1].numerator(), lo[1].denominator());
  const Int k0max = floor_div(hi[0].numerator(), hi[0].denominator()) + 1;
  const Int k1max = floor_div(hi[1].numerator(), hi[1].denominator()) + 1;
  for (Int k0 = k0min; k0 <= k0max; ++k0) {
    for (Int k1 = k1min; k1 <= k1max; ++k1) {
      const Rational b0 = Rational(k0) - c[0], b1 = Rational(k1) - c[1];
      // adjugate solve
      const Rational x0 = (Rational(A(1, 1)) * b0 - Rational(A(0, 1)) * b1) / Rational(det);
      const Rational x1 = (Rational(-A(1, 0)) * b0 + Rational(A(0, 0)) * b1) / Rational(det);
      if (x0 >= 0 && x0 < 1 && x1 >= 0 && x1 < 1)
        out.push_back({x0, x1});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Torus2Result nielsen_torus_2valued(const NValuedMapDescriptor &d) {
  require_valid(d);
  if (d.surface.kind != SurfaceKind::Torus || d.n != 2)
    throw Error(ErrorCode::PayloadMismatch, "needs a 2-valued torus map");
  const auto *payload = std::get_if<TorusLinearPayload>(&d.payload);
  if (!payload)
    throw Error(ErrorCode::PayloadMismatch, "missing linear payload (M, c)");
  const IntMatrix2 Q = kernel_lattice(d.sigma[0], d.sigma[1]);

  // Lifting consistency: a supplied covering must be the kernel of sigma,
  // i.e. going once around e_j swaps the two values iff e_j is not in Q Z^2.
  if (payload->Q) {
    if (det2(*payload->Q) == 0)
      throw Error(ErrorCode::SingularCovering, "payload Q is singular");
    if (hermite_normal_form(*payload->Q) != Q)
      throw Error(ErrorCode::InconsistentPayload,
                  "payload Q " + to_string(*payload->Q) +
                      " does not span the kernel lattice " + to_string(Q) + " of sigma");
  }

  Torus2Result r;
  r.Q = Q;
  r.det = lefschetz_coincidence(Q, payload->M);
  r.oracle_count = coincidence_count_oracle(Q, payload->M, payload->c);
  r.degenerate = r.det == 0;
  r.nielsen = std::llabs(r.det);

  // Deck translation Q^-1 delta for a generator delta outside H; the values
  // f(x) and f(x + Q^-1 delta) agree iff M Q^-1 delta is integral.
  const IntMatrix2 adj = int_matrix(Q(1, 1), -Q(0, 1), -Q(1, 0), Q(0, 0));
  const Int dq = det2(Q);
  const int outside = d.sigma[0].is_identity() ? 1 : 0;
  const auto shift = payload->M * adj.col(outside);
  r.coordinates_coincide = shift(0) % dq == 0 && shift(1) % dq == 0;
  return r;
}

namespace {

double wrap(double v) { return v - std::round(v); }

Vec2 apply(const IntMatrix2 &m, const Vec2 &x) {
  return {static_cast<double>(m(0, 0)) * x(0) + static_cast<double>(m(0, 1)) * x(1),
          static_cast<double>(m(1, 0)) * x(0) + static_cast<double>(m(1, 1)) * x(1)};
}

} // namespace

std::optional<int> covering_coincidence_index(const IntMatrix2 &Q, const IntMatrix2 &M,
                                              const std::array<double, 2> &c,
                                              const std::array<double, 2> &x,
                                              double radius) {
  const Vec2 cv(c[0], c[1]);
  return planar_index(
      [&](const Vec2 &p) {
        const Vec2 d = apply(Q, p) - apply(M, p) - cv;
        return Vec2(wrap(d(0)), wrap(d(1)));
      },
      Vec2(x[0], x[1]), radius);
}

std::optional<int> base_fixed_point_index(const IntMatrix2 &Q, const IntMatrix2 &M,
                                          const std::array<double, 2> &c,
                                          const std::array<double, 2> &y,
                                          double radius) {
  const Int dq = det2(Q);
  if (dq == 0)
    throw Error(ErrorCode::SingularCovering, "covering matrix is singular");
  const Eigen::Matrix2d Qd = Q.cast<double>();
  const Eigen::Matrix2d Qinv = Qd.inverse();
  // Coset representatives of Z^2 / Q Z^2 inside the bounding box of Q[0,1)^2.
  std::vector<Vec2> reps;
  {
    const auto solutions =
        enumerate_coincidences(IntMatrix2::Zero(), Q, {Rational(0), Rational(0)});
    for (const auto &s : solutions)
      reps.push_back(Qd * Vec2(boost::rational_cast<double>(s[0]),
                               boost::rational_cast<double>(s[1])));
  }
  const Vec2 cv(c[0], c[1]);
  const Vec2 y0(y[0], y[1]);
  return planar_index(
      [&](const Vec2 &p) {
        // the value of phi at p nearest p
        Vec2 best(0, 0);
        double best_norm = std::numeric_limits<double>::infinity();
        for (const auto &k : reps) {
          const Vec2 v = apply(M, Qinv * (p + k)) + cv;
          const Vec2 d(wrap(p(0) - v(0)), wrap(p(1) - v(1)));
          if (d.norm() < best_norm) {
            best_norm = d.norm();
            best = d;
          }
        }
        return best;
      },
      y0, radius);
}

} // namespace nvfix
