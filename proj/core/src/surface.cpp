#include "nvfix/surface.hpp"

#include <algorithm>
#include <cctype>
#include <string>

#include "nvfix/error.hpp"
#include "nvfix/grid_spec.hpp"

namespace nvfix {

std::string_view to_string(SurfaceKind kind) {
  switch (kind) {
  case SurfaceKind::Disc: return "Disc";
  case SurfaceKind::Sphere: return "Sphere";
  case SurfaceKind::ProjectivePlane: return "ProjectivePlane";
  case SurfaceKind::Torus: return "Torus";
  }
  return "?";
}

SurfaceKind parse_surface_kind(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "disc" || lower == "disk" || lower == "d2")
    return SurfaceKind::Disc;
  if (lower == "sphere" || lower == "s2")
    return SurfaceKind::Sphere;
  if (lower == "projectiveplane" || lower == "rp2")
    return SurfaceKind::ProjectivePlane;
  if (lower == "torus" || lower == "t2")
    return SurfaceKind::Torus;
  throw Error(ErrorCode::UnsupportedSurface, "unknown surface '" + std::string(text) + "'");
}

void GridSpec::validate() const {
  if (!(resolution > 0))
    throw Error(ErrorCode::ConfigError, "resolution must be positive");
  if (!(cluster_radius > resolution))
    throw Error(ErrorCode::ConfigError, "cluster_radius must exceed resolution");
  if (refinement_depth < 0)
    throw Error(ErrorCode::ConfigError, "refinement_depth must be non-negative");
  if (!(candidate_factor > 0) || !(zero_tolerance > 0) || !(index_radius > 0))
    throw Error(ErrorCode::ConfigError, "tolerances must be positive");
  if (max_candidates == 0)
    throw Error(ErrorCode::ConfigError, "max_candidates must be positive");
}

} // namespace nvfix
