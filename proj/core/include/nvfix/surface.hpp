#pragma once

#include <string_view>

namespace nvfix {

enum class SurfaceKind { Disc, Sphere, ProjectivePlane, Torus };

std::string_view to_string(SurfaceKind kind);
/// Accepts "Disc", "Sphere", "ProjectivePlane"/"RP2", "Torus" (any case).
SurfaceKind parse_surface_kind(std::string_view text);

} // namespace nvfix
