#pragma once

// Symbolic description of an n-valued map of a surface: the permutations
// induced on the n values by the generators of the fundamental group.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "nvfix/error.hpp"
#include "nvfix/geometry.hpp"
#include "nvfix/group_action.hpp"
#include "nvfix/linear.hpp"
#include "nvfix/surface.hpp"

namespace nvfix {

struct SurfaceDescriptor {
  SurfaceKind kind = SurfaceKind::Sphere;

  /// "trivial", "Z2" or "ZxZ".
  std::string pi1() const;
  bool orientable() const noexcept { return kind != SurfaceKind::ProjectivePlane; }
  /// 0 for Disc and Sphere, 1 for RP^2, 2 (e1, e2) for the torus.
  int generator_count() const noexcept;
};

/// Coordinate maps of a split map of S^2 or RP^2, or just its class.
struct CatalogPayload {
  std::vector<CatalogMap> coordinates;
  std::optional<Rp2Class> cls;
};

using Payload = std::variant<std::monostate, CatalogPayload, TorusLinearPayload>;

struct NValuedMapDescriptor {
  SurfaceDescriptor surface;
  int n = 1;
  /// Images of the fundamental group generators, in generator order.
  std::vector<Permutation> sigma;
  Payload payload;
};

struct Violation {
  ErrorCode code;
  std::string message;
};

/// Every violated requirement; empty when the descriptor is valid.
std::vector<Violation> validate(const NValuedMapDescriptor &d,
                                int cap = kDefaultDegreeCap);
/// Throws the first violation, if any.
void require_valid(const NValuedMapDescriptor &d, int cap = kDefaultDegreeCap);

/// True iff every sigma image is the identity. Throws if invalid.
bool is_split(const NValuedMapDescriptor &d);

struct CoveringAnalysis {
  int n = 0;
  PermGroup L_prime;
  /// Index of H = ker in the fundamental group; equals |L'|.
  std::size_t index_H = 1;
  OrbitPartition orbits;
  /// stabilizers[i-1] = L'_{i,i}.
  std::vector<PermGroup> stabilizers;
  bool free = true;
  std::optional<std::pair<int, Permutation>> witness;
  /// Lifts of the map to the ordered configuration space: n!.
  std::uint64_t lift_count = 1;
  /// |L'_{i,i}| per i: coincidences of q and f_i over a fixed point.
  std::vector<std::size_t> fiber_coincidence_counts;
  /// K_i, W and m_{i,s} multiplicities; identically 1 when the action is
  /// free, not computed otherwise.
  std::optional<int> class_multiplicity;
};

CoveringAnalysis covering_analysis(const NValuedMapDescriptor &d);
/// The same analysis for any image subgroup generated in S_n, without
/// surface relations.
CoveringAnalysis analyze_image(std::span<const Permutation> sigma, int n);

} // namespace nvfix
