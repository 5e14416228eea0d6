#pragma once

// Closed-form maps of the unit sphere S^2 and of RP^2 = S^2 / {x ~ -x}.

#include <string>
#include <vector>

#include <Eigen/Core>

#include "nvfix/grid_spec.hpp"
#include "nvfix/surface.hpp"

namespace nvfix {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846;

/// A point of S^2; the stored vector has unit norm to within 1e-12.
class SpherePoint {
public:
  /// Normalizes v. Throws DomainMismatch for the zero vector.
  explicit SpherePoint(const Vec3 &v);
  SpherePoint(double x, double y, double z) : SpherePoint(Vec3(x, y, z)) {}

  static SpherePoint north() { return SpherePoint(0, 0, 1); }
  static SpherePoint south() { return SpherePoint(0, 0, -1); }

  const Vec3 &vec() const noexcept { return v_; }
  SpherePoint antipode() const { return SpherePoint(-v_); }

private:
  Vec3 v_;
};

/// Longitude theta in [0, 2pi) and latitude phi in [-pi/2, pi/2]; the
/// Cartesian point is (cos phi cos theta, cos phi sin theta, sin phi).
struct SphericalCoord {
  double theta = 0;
  double phi = 0;

  /// Wraps theta and reflects phi back into range, so rules such as
  /// (theta, 2 phi - pi/2) need no special cases.
  static SphericalCoord normalized(double theta, double phi);
  static SphericalCoord from_point(const SpherePoint &p);
  SpherePoint to_point() const;
};

/// A point of RP^2 stored as its canonical representative: z > 0, or z = 0
/// and y > 0, or z = y = 0 and x > 0.
class RP2Point {
public:
  explicit RP2Point(const SpherePoint &p);
  explicit RP2Point(const Vec3 &v) : RP2Point(SpherePoint(v)) {}

  const SpherePoint &rep() const noexcept { return rep_; }
  const Vec3 &vec() const noexcept { return rep_.vec(); }

private:
  SpherePoint rep_;
};

/// Canonical representative of the class of v (v need not be normalized).
Vec3 canonical_rp2(const Vec3 &v);

double sphere_distance(const Vec3 &a, const Vec3 &b);
/// min(|a-b|, |a+b|): the chordal metric on RP^2.
double rp2_distance(const Vec3 &a, const Vec3 &b);
/// Distance in the metric of the given surface (Sphere or ProjectivePlane).
double surface_distance(SurfaceKind s, const Vec3 &a, const Vec3 &b);

/// Orthonormal (e1, e2) with e1 x e2 = p.
std::pair<Vec3, Vec3> tangent_frame(const Vec3 &p);

/// Rotation matrix taking the north pole (0,0,1) to p.
Eigen::Matrix3d rotation_to(const Vec3 &p);

/// Reduced suspension of S^1, coordinates (u, t) in [0,1]^2 with the
/// boundary collapsed; u = theta / 2pi. The basepoint (the boundary) is sent
/// to (1,0,0) and the centre (u,t) = (1/2,1/2) to (-1,0,0).
Vec3 suspension_to_sphere(double u, double t);
/// Inverse away from the basepoint; the basepoint maps to (0, 0).
Vec2 sphere_to_suspension(const Vec3 &y);
inline const Vec3 kSuspensionBasepoint{1.0, 0.0, 0.0};

enum class MapKind {
  Identity,
  Antipodal,
  Constant,    // S^2 -> S^2, constant at pole
  F1,          // degree-1 deformation of the identity fixing pole only
  F2,          // suspension of z -> z^2
  UP,          // U_P : S^2 -> S^2, x -> 2 (x.P) x - P
  WP,          // W_P : RP^2 -> RP^2, induced by U_P
  ConstantRP2, // RP^2 -> RP^2, constant at the class of pole
};

/// One of the closed-form catalog maps. Maps on RP^2 are evaluated on any
/// representative and return a representative of the image class.
class CatalogMap {
public:
  static CatalogMap identity() { return CatalogMap(MapKind::Identity); }
  static CatalogMap antipodal() { return CatalogMap(MapKind::Antipodal); }
  static CatalogMap constant(const SpherePoint &p);
  static CatalogMap f2() { return CatalogMap(MapKind::F2); }
  static CatalogMap up(const SpherePoint &p);
  static CatalogMap wp(const SpherePoint &p);
  static CatalogMap constant_rp2(const SpherePoint &p);
  // F1 is built by make_f1, which validates epsilon.

  /// Parses ids such as "antipodal", "identity", "f2", "A*f1(P=north,eps=0.1)",
  /// "const(P=[0,0,1])", "UP(P=[theta,phi])", "WP(P=north)",
  /// "constRP2(P=[1,0,0])". A leading "A*" post-composes with the antipodal
  /// map. Throws ParseError.
  static CatalogMap parse(const std::string &id);

  MapKind kind() const noexcept { return kind_; }
  const Vec3 &pole() const noexcept { return pole_; }
  double epsilon() const noexcept { return epsilon_; }
  bool post_antipodal() const noexcept { return post_antipodal_; }

  SurfaceKind domain() const noexcept;
  SurfaceKind codomain() const noexcept { return domain(); }

  /// A o this. Throws DomainMismatch for maps of RP^2.
  CatalogMap then_antipodal() const;

  /// Canonical id string; parse(id()) reproduces the map.
  std::string id() const;

  /// Raw evaluation on a unit vector (any representative for RP^2 maps).
  Vec3 apply(const Vec3 &x) const;

  /// For maps of RP^2: the lift RP^2 -> S^2 as an even map of S^2
  /// (U_P for W_P, a constant for constants). Throws DomainMismatch.
  Vec3 apply_lift(const Vec3 &x) const;

private:
  friend CatalogMap make_f1(const SpherePoint &, double);
  explicit CatalogMap(MapKind k) : kind_(k) {}

  MapKind kind_ = MapKind::Identity;
  Vec3 pole_{0, 0, 1};
  double epsilon_ = 0;
  bool post_antipodal_ = false;
  Vec3 e1_{1, 0, 0}, e2_{0, 1, 0}; // frame at pole for F1
};

/// Checked evaluation; throws DomainMismatch if the point type does not
/// match the map's domain.
SpherePoint eval(const CatalogMap &map, const SpherePoint &x);
RP2Point eval(const CatalogMap &map, const RP2Point &x);

inline constexpr double kDefaultF1Epsilon = 0.1;

/// x -> s^-1(s(x) + epsilon e1), with s the stereographic projection from P
/// and P sent to itself. Throws EpsilonTooLarge unless 0 < epsilon < 1 and a
/// grid check confirms |x - f1(x)| < 2 sin(pi/4).
CatalogMap make_f1(const SpherePoint &pole, double epsilon = kDefaultF1Epsilon);

enum class Rp2Class { Trivial, NonTrivial };
std::string_view to_string(Rp2Class c);

/// Points P_1..P_n on the arc from (1,0,0) to (0,0,1), P_k at angle
/// k pi / (2(n+1)).
std::vector<SpherePoint> rp2_arc_points(int n);

/// (W_{P_1}, ..., W_{P_n}) or the constants at the classes of P_k. Pairwise
/// coincidence-freeness is checked by a grid scan at `grid`; throws
/// ValidationFailed if any pair comes closer than 1e-6.
std::vector<CatalogMap> build_rp2_representative(int n, Rp2Class cls,
                                                 const GridSpec &grid = {});

} // namespace nvfix
