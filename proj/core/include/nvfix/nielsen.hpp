#pragma once

// Nielsen numbers of n-valued maps: additivity for split maps, the orbit sum
// over a free covering action for non-split ones, and per-surface values.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nvfix/descriptor.hpp"
#include "nvfix/linear.hpp"

namespace nvfix {

inline constexpr const char *kFormulaSplit = "split additivity";
inline constexpr const char *kFormulaOrbitSum = "orbit sum over free covering";
inline constexpr const char *kFormulaTorus = "torus 2-valued linear instance";

/// Sum of the per-coordinate Nielsen numbers. Throws EmptyInput, and
/// InconsistentInput for negative entries.
std::int64_t nielsen_split(std::span<const std::int64_t> ns);

struct NielsenInput {
  CoveringAnalysis analysis;
  /// N(q, f_i) keyed by coordinate index; any member of an orbit may stand
  /// for its representative.
  std::map<int, std::int64_t> per_pair;
};

struct NielsenResult {
  std::string formula_used;
  /// (coordinate index, term) in summation order.
  std::vector<std::pair<int, std::int64_t>> terms;
  std::int64_t total = 0;
};

/// Sum of per_pair over the orbit representatives. Throws NotFree (with the
/// witness) unless stabilizers are trivial, MissingRepresentative if an orbit
/// has no value, InconsistentInput if two keys of one orbit disagree.
NielsenResult nielsen_nonsplit(const NielsenInput &input);

/// Degree for a sphere map, a matrix for a torus map, nothing otherwise.
using MapDatum = std::variant<std::monostate, int, IntMatrix2>;

/// Nielsen number of a single self-map. Sphere: 0 iff degree -1, else 1.
/// RP^2 and Disc: 1. Torus: |det(M - I)|.
std::int64_t single_map_nielsen(const SurfaceDescriptor &surface,
                                const MapDatum &datum);

struct HomotopyClassCount {
  /// Set when the count is finite.
  std::optional<int> count;
  /// For countable families, what indexes the classes.
  std::string indexed_by;

  bool countable() const noexcept { return !count.has_value(); }
};

/// Number of homotopy classes of n-valued self-maps. Throws
/// UnsupportedSurface for the torus and for RP^2 with n = 1.
HomotopyClassCount classify_homotopy_count(const SurfaceDescriptor &surface, int n);

} // namespace nvfix
