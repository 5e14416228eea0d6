#pragma once

// Non-split 2-valued maps of the torus in the linear model.
//
// The double cover is q: R^2/Z^2 -> R^2/Z^2, q(x) = Qx, with Q a basis of
// the kernel lattice H of sigma. A lift coordinate is f(x) = Mx + c, and
// phi(y) = { f(x) : q(x) = y }. Coincidences of (q, f) solve
// (M - Q)x = -c mod Z^2.

#include <array>
#include <optional>
#include <vector>

#include "nvfix/descriptor.hpp"
#include "nvfix/linear.hpp"

namespace nvfix {

/// Column Hermite normal form [[a, b], [0, d]] with a, d > 0 and
/// 0 <= b < a, spanning the same lattice. Throws SingularCovering.
IntMatrix2 hermite_normal_form(const IntMatrix2 &basis);

/// Invariant factors (d1, d2) with d1 | d2, both non-negative.
std::array<Int, 2> smith_diagonal(const IntMatrix2 &m);

/// HNF basis of {v in Z^2 : rho(v) = id} for rho(e1) = s1, rho(e2) = s2 in
/// S_2. Throws SplitInput if both are trivial, DegreeMismatch if not in S_2.
IntMatrix2 kernel_lattice(const Permutation &s1, const Permutation &s2);

/// det(M - Q). Throws SingularCovering if det Q = 0.
Int lefschetz_coincidence(const IntMatrix2 &Q, const IntMatrix2 &M);

/// Number of coincidences in [0,1)^2 from the Smith form of M - Q; empty
/// when det(M - Q) = 0 (degenerate: the solution set is not finite).
std::optional<Int> coincidence_count_oracle(const IntMatrix2 &Q, const IntMatrix2 &M,
                                            const RationalVec2 &c);

/// All x in [0,1)^2 with (M - Q)x + c in Z^2, by enumerating the integer
/// points of (M - Q)[0,1)^2 + c. Requires det(M - Q) != 0.
std::vector<RationalVec2> enumerate_coincidences(const IntMatrix2 &Q,
                                                 const IntMatrix2 &M,
                                                 const RationalVec2 &c);

struct Torus2Result {
  IntMatrix2 Q;
  Int det = 0;
  std::optional<Int> oracle_count;
  Int nielsen = 0;
  bool degenerate = false;
  /// M Q^-1 maps the deck translation into Z^2, so the two values of phi
  /// agree everywhere.
  bool coordinates_coincide = false;
};

/// Nielsen number of the 2-valued map given by a non-split torus
/// descriptor with a linear payload: |det(M - Q)|. Throws SplitInput,
/// PayloadMismatch or InconsistentPayload.
Torus2Result nielsen_torus_2valued(const NValuedMapDescriptor &d);

/// Coincidence index of (q, f) at x: winding of q - f on a circle in the
/// covering chart.
std::optional<int> covering_coincidence_index(const IntMatrix2 &Q, const IntMatrix2 &M,
                                              const std::array<double, 2> &c,
                                              const std::array<double, 2> &x,
                                              double radius);

/// Fixed point index of phi at y = q(x) on the base torus, following the
/// branch of phi that passes through y.
std::optional<int> base_fixed_point_index(const IntMatrix2 &Q, const IntMatrix2 &M,
                                          const std::array<double, 2> &c,
                                          const std::array<double, 2> &y,
                                          double radius);

} // namespace nvfix
