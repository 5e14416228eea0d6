#pragma once

#include <cstddef>
#include <cstdint>

namespace nvfix {

/// Tolerances for every grid scan. Distances are chordal (unit sphere) and,
/// on RP^2, the quotient metric min(|a-b|, |a+b|).
struct GridSpec {
  /// Angular step of the scan grid, in radians.
  double resolution = 1e-3;
  /// Zoom passes applied to each candidate before the final polish.
  int refinement_depth = 3;
  /// Refined points closer than this are merged into one cluster.
  double cluster_radius = 5e-3;
  /// Grid points are candidates only if their residual is below
  /// candidate_factor * resolution.
  double candidate_factor = 20.0;
  /// A refined point is a zero (fixed point, preimage) below this residual.
  double zero_tolerance = 1e-8;
  /// Radius of the circle used for winding-number indices.
  double index_radius = 2.5e-3;
  /// Above this many candidates the zero set is treated as non-isolated.
  std::size_t max_candidates = 100000;
  /// Worker threads for grid evaluation; 0 reads NVFIX_THREADS.
  unsigned threads = 0;
  /// Seeds regular-value selection.
  std::uint64_t seed = 0;

  /// Throws ConfigError unless resolution > 0 and cluster_radius > resolution.
  void validate() const;
};

} // namespace nvfix
