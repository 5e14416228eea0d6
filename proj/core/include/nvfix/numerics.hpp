#pragma once

// Grid scans on S^2 / RP^2: fixed points, coincidences, preimages, winding
// indices and degrees.
//
// The scan grid is a cube-sphere: six gnomonic faces with equal-angle
// spacing, N = ceil((pi/2) / resolution) points per face side. Maps of RP^2
// are scanned through representatives on the whole sphere and clustered in
// the quotient metric. Scans may run on several threads; candidates are
// merged in grid order so results do not depend on the partition.

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nvfix/geometry.hpp"
#include "nvfix/grid_spec.hpp"
#include "nvfix/surface.hpp"

namespace nvfix {

/// A self-map of S^2 or RP^2 (or, with codomain Sphere and domain
/// ProjectivePlane, a lift RP^2 -> S^2) evaluated on unit vectors.
struct SurfaceMap {
  SurfaceKind domain = SurfaceKind::Sphere;
  SurfaceKind codomain = SurfaceKind::Sphere;
  std::function<Vec3(const Vec3 &)> f;
  std::string id;

  Vec3 operator()(const Vec3 &x) const { return f(x); }
};

SurfaceMap to_surface_map(const CatalogMap &m);
/// The lift RP^2 -> S^2 of a catalog map of RP^2.
SurfaceMap lift_surface_map(const CatalogMap &m);
SurfaceMap compose_antipodal(const SurfaceMap &m);

/// Worker count for scans: grid.threads, else NVFIX_THREADS, else the
/// hardware concurrency.
unsigned scan_threads(const GridSpec &grid);

struct ZeroPoint {
  Vec3 location;
  double residual = 0;
  double diameter = 0;
  std::size_t members = 1;
};

/// Zeros of a non-negative residual on the domain surface: grid local minima
/// below candidate_factor * resolution, refined and clustered.
/// Throws GridTooCoarse when candidates exceed max_candidates or a cluster
/// grows wider than cluster_radius.
std::vector<ZeroPoint> locate_zeros(
    const std::function<double(const Vec3 &)> &residual, SurfaceKind domain,
    const GridSpec &grid);

struct FixedPointCluster {
  Vec3 location;
  /// Winding index; empty when sampling did not stabilize (Unreliable).
  std::optional<int> index;
  double diameter = 0;
  double residual = 0;
  /// Coordinates (0-based) of a split map that fix this point.
  std::vector<std::size_t> coordinates;
};

struct FixedPointReport {
  std::vector<FixedPointCluster> clusters;
  std::size_t total_count = 0;
  std::string map_id;
  GridSpec grid;
};

FixedPointReport find_fixed_points(const SurfaceMap &map,
                                   const GridSpec &grid = {});
/// Fix of a split n-valued map: the union over its coordinates.
FixedPointReport find_fixed_points(std::span<const SurfaceMap> coordinates,
                                   const GridSpec &grid = {});
FixedPointReport find_fixed_points(std::span<const CatalogMap> coordinates,
                                   const GridSpec &grid = {});

/// Winding number of a non-vanishing planar field sampled on a circle
/// (argument in [0, 2pi)). Starts at 64 samples and doubles until two
/// consecutive counts agree; empty if that has not happened by 1024. A step
/// turning by pi/2 or more is bisected locally, and a count with a step
/// that stays that sharp does not count. Throws ZeroOnCircle if the field vanishes
/// (relative to `scale`) at a sample.
std::optional<int> winding_number(const std::function<Vec2(double)> &field,
                                  double scale);

/// Index of the zero of v at `center`: winding of v on the circle of the
/// given radius.
std::optional<int> planar_index(const std::function<Vec2(const Vec2 &)> &v,
                                const Vec2 &center, double radius);

/// Fixed point index of a self-map at `point`, from x - f(x) in the
/// gnomonic chart centred there.
std::optional<int> fixed_point_index(const SurfaceMap &map, const Vec3 &point,
                                     double radius);

struct CoincidenceScan {
  double min = 0;
  Vec3 argmin;
};

/// Minimum over the grid of d(f(x), g(x)), polished around the argmin.
CoincidenceScan coincidence_min_distance(const SurfaceMap &f,
                                         const SurfaceMap &g,
                                         const GridSpec &grid = {});
CoincidenceScan coincidence_min_distance(const CatalogMap &f,
                                         const CatalogMap &g,
                                         const GridSpec &grid = {});

/// Maximum over the grid of |x - f(x)|.
double max_displacement(const std::function<Vec3(const Vec3 &)> &f,
                        const GridSpec &grid);

struct Preimage {
  Vec3 location;
  /// Sign of the Jacobian in oriented tangent frames.
  int sign = 0;
};

struct DegreeEstimate {
  int degree = 0;
  /// Regular values whose signed counts were compared.
  std::vector<Vec3> regular_values;
  std::vector<std::vector<Preimage>> preimages;
};

/// Degree of a map S^2 -> S^2 by signed preimage counting at two regular
/// values drawn from a sequence seeded by grid.seed. Values with a
/// near-singular preimage or a non-isolated preimage set are skipped.
/// Throws DegreeUnstable if no two usable values agree.
DegreeEstimate degree_sphere_detailed(const SurfaceMap &map,
                                      const GridSpec &grid = {});
int degree_sphere(const SurfaceMap &map, const GridSpec &grid = {});

/// Degree of the 2-valued map {f, A o f} of S^2: |deg f|.
int classify_2valued_sphere(const SurfaceMap &f, const GridSpec &grid = {});

struct Rp2Classification {
  Rp2Class cls = Rp2Class::Trivial;
  /// Preimages in RP^2 of a regular value under each coordinate's lift;
  /// its parity is the absolute degree mod 2.
  std::vector<int> lift_preimage_counts;
};

/// Homotopy class of an n-ordered map of RP^2 from the parity of the
/// absolute degree of each coordinate lift. Throws InconsistentClass if the
/// parities disagree.
Rp2Classification classify_rp2(std::span<const CatalogMap> maps,
                               const GridSpec &grid = {});

} // namespace nvfix
