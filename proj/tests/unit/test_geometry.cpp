#include <cmath>
#include <random>

#include <Eigen/Geometry>

#include "doctest.h"

#include "nvfix/error.hpp"
#include "nvfix/geometry.hpp"

using namespace nvfix;

namespace {

std::vector<Vec3> sample_points(int count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<Vec3> out;
  while (static_cast<int>(out.size()) < count) {
    Vec3 v(g(rng), g(rng), g(rng));
    if (v.norm() > 1e-6)
      out.push_back(v.normalized());
  }
  return out;
}

// Rotation taking the north pole to p, built with Rodrigues' formula.
Eigen::Matrix3d rodrigues_to(const Vec3 &p) {
  const Vec3 n(0, 0, 1);
  const Vec3 axis = n.cross(p);
  const double s = axis.norm(), c = n.dot(p);
  if (s < 1e-14)
    return c > 0 ? Eigen::Matrix3d::Identity() : Eigen::Matrix3d(Eigen::Vector3d(1, -1, -1).asDiagonal());
  const Vec3 k = axis / s;
  Eigen::Matrix3d K;
  K << 0, -k.z(), k.y(), k.z(), 0, -k.x(), -k.y(), k.x(), 0;
  return Eigen::Matrix3d::Identity() + s * K + (1 - c) * K * K;
}

// U_P through the pole rule (theta, phi) -> (theta, 2 phi - pi/2) in a
// frame where P is the north pole.
Vec3 up_oracle(const Vec3 &P, const Vec3 &x) {
  const auto R = rodrigues_to(P);
  const Vec3 local = R.transpose() * x;
  const double theta = std::atan2(local.y(), local.x());
  const double phi = std::asin(std::clamp(local.z(), -1.0, 1.0));
  const double phi2 = 2 * phi - kPi / 2;
  const Vec3 img(std::cos(phi2) * std::cos(theta), std::cos(phi2) * std::sin(theta), std::sin(phi2));
  return R * img;
}

} // namespace

TEST_CASE("points and metrics") {
  const SpherePoint p(0, 0, 5);
  CHECK(p.vec().isApprox(Vec3(0, 0, 1)));
  CHECK_THROWS_AS(SpherePoint(0, 0, 0), Error);
  CHECK(p.antipode().vec().isApprox(Vec3(0, 0, -1)));

  const RP2Point q(Vec3(0, 0, -2));
  CHECK(q.vec().isApprox(Vec3(0, 0, 1)));
  CHECK(canonical_rp2(Vec3(0, -1, 0)).isApprox(Vec3(0, 1, 0)));
  CHECK(canonical_rp2(Vec3(-3, 0, 0)).isApprox(Vec3(1, 0, 0)));

  const Vec3 a(1, 0, 0), b(0, 1, 0);
  CHECK(sphere_distance(a, -a) == doctest::Approx(2.0));
  CHECK(rp2_distance(a, -a) == doctest::Approx(0.0));
  CHECK(rp2_distance(a, b) == doctest::Approx(std::sqrt(2.0)));
  CHECK(surface_distance(SurfaceKind::ProjectivePlane, a, -a) == doctest::Approx(0.0));
  CHECK(surface_distance(SurfaceKind::Sphere, a, -a) == doctest::Approx(2.0));
  for (const auto &x : sample_points(50, 1)) {
    CHECK(rp2_distance(x, canonical_rp2(-x)) < 1e-12);
    CHECK(canonical_rp2(x).norm() == doctest::Approx(1.0));
  }
}

TEST_CASE("spherical coordinates") {
  const auto c = SphericalCoord::normalized(-kPi / 2, kPi / 3);
  CHECK(c.theta == doctest::Approx(3 * kPi / 2));
  // reflecting latitude past the pole moves to the opposite meridian
  const auto r = SphericalCoord::normalized(0.0, kPi / 2 + 0.2);
  CHECK(r.phi == doctest::Approx(kPi / 2 - 0.2));
  CHECK(r.theta == doctest::Approx(kPi));
  for (const auto &x : sample_points(100, 2)) {
    const auto sc = SphericalCoord::from_point(SpherePoint(x));
    CHECK((sc.to_point().vec() - x).norm() < 1e-12);
  }
}

TEST_CASE("tangent frames and rotations") {
  for (const auto &p : sample_points(40, 3)) {
    const auto [e1, e2] = tangent_frame(p);
    CHECK(std::abs(e1.dot(p)) < 1e-12);
    CHECK(std::abs(e1.dot(e2)) < 1e-12);
    CHECK((e1.cross(e2) - p).norm() < 1e-12);
    const auto R = rotation_to(p);
    CHECK((R * Vec3(0, 0, 1) - p).norm() < 1e-12);
    CHECK((R.transpose() * R - Eigen::Matrix3d::Identity()).norm() < 1e-12);
    CHECK(R.determinant() == doctest::Approx(1.0));
  }
}

TEST_CASE("U_P matches the rotated pole rule") {
  for (const auto &P : sample_points(12, 4)) {
    const auto up = CatalogMap::up(SpherePoint(P));
    for (const auto &x : sample_points(60, 5))
      CHECK((up.apply(x) - up_oracle(P, x)).norm() < 1e-9);
    CHECK((up.apply(P) - P).norm() < 1e-12);
  }
  const auto up = CatalogMap::up(SpherePoint::north());
  CHECK((up.apply(Vec3(1, 0, 0)) - Vec3(0, 0, -1)).norm() < 1e-12);
}

TEST_CASE("W_P is induced by U_P") {
  for (const auto &P : sample_points(6, 6)) {
    const auto up = CatalogMap::up(SpherePoint(P));
    const auto wp = CatalogMap::wp(SpherePoint(P));
    CHECK(wp.domain() == SurfaceKind::ProjectivePlane);
    for (const auto &x : sample_points(60, 7)) {
      // U_P is even, so it descends to RP^2 -> S^2
      CHECK((up.apply(x) - up.apply(-x)).norm() < 1e-9);
      // diagram: W_P o proj = proj o U_P
      const Vec3 w = eval(wp, RP2Point(x)).vec();
      CHECK(rp2_distance(w, canonical_rp2(up.apply(x))) < 1e-9);
      CHECK((wp.apply_lift(x) - up.apply(x)).norm() < 1e-9);
    }
  }
}

TEST_CASE("antipodal and constant maps") {
  const auto a = CatalogMap::antipodal();
  const auto k = CatalogMap::constant(SpherePoint::north());
  for (const auto &x : sample_points(30, 8)) {
    CHECK((a.apply(x) + x).norm() < 1e-12);
    CHECK((k.apply(x) - Vec3(0, 0, 1)).norm() < 1e-12);
    CHECK((k.then_antipodal().apply(x) - Vec3(0, 0, -1)).norm() < 1e-12);
    CHECK((CatalogMap::identity().then_antipodal().apply(x) + x).norm() < 1e-12);
  }
  const auto c = CatalogMap::constant_rp2(SpherePoint(0, 0, -1));
  CHECK(eval(c, RP2Point(Vec3(1, 2, 3))).vec().isApprox(Vec3(0, 0, 1)));
  CHECK_THROWS_AS(c.then_antipodal(), Error);
  CHECK_THROWS_AS(eval(c, SpherePoint::north()), Error);
  CHECK_THROWS_AS(eval(a, RP2Point(Vec3(0, 0, 1))), Error);
  CHECK_THROWS_AS(a.apply_lift(Vec3(0, 0, 1)), Error);
}

TEST_CASE("f1 is a small deformation fixing only the pole") {
  const auto pole = SpherePoint(Vec3(1, 1, 1));
  const auto f1 = make_f1(pole, 0.1);
  CHECK((f1.apply(pole.vec()) - pole.vec()).norm() < 1e-12);
  double max_disp = 0;
  for (const auto &x : sample_points(2000, 9)) {
    const double d = (f1.apply(x) - x).norm();
    max_disp = std::max(max_disp, d);
    if ((x - pole.vec()).norm() > 1e-3)
      CHECK(d > 1e-9);
    CHECK(f1.apply(x).norm() == doctest::Approx(1.0));
  }
  CHECK(max_disp < 2 * std::sin(kPi / 4));
  CHECK_THROWS_AS(make_f1(pole, 0.0), Error);
  CHECK_THROWS_AS(make_f1(pole, -0.1), Error);
  CHECK_THROWS_AS(make_f1(pole, 1.0), Error);
  try {
    make_f1(pole, 2.0);
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::EpsilonTooLarge);
  }
}

TEST_CASE("suspension coordinates") {
  CHECK((suspension_to_sphere(0.3, 0.0) - kSuspensionBasepoint).norm() < 1e-12);
  CHECK((suspension_to_sphere(0.0, 0.7) - kSuspensionBasepoint).norm() < 1e-12);
  CHECK((suspension_to_sphere(1.0, 0.2) - kSuspensionBasepoint).norm() < 1e-12);
  CHECK((suspension_to_sphere(0.5, 0.5) - Vec3(-1, 0, 0)).norm() < 1e-12);
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.02, 0.98);
  for (int k = 0; k < 200; ++k) {
    const double a = u(rng), b = u(rng);
    const Vec3 y = suspension_to_sphere(a, b);
    CHECK(y.norm() == doctest::Approx(1.0));
    const Vec2 back = sphere_to_suspension(y);
    CHECK((suspension_to_sphere(back.x(), back.y()) - y).norm() < 1e-9);
  }
}

TEST_CASE("f2 fixes only the basepoint and A o f2 only its antipode") {
  const auto f2 = CatalogMap::f2();
  CHECK((f2.apply(kSuspensionBasepoint) - kSuspensionBasepoint).norm() < 1e-12);
  const auto af2 = f2.then_antipodal();
  CHECK((af2.apply(-kSuspensionBasepoint) + kSuspensionBasepoint).norm() < 1e-12);
  for (const auto &x : sample_points(3000, 11)) {
    CHECK(f2.apply(x).norm() == doctest::Approx(1.0));
    if ((x - kSuspensionBasepoint).norm() > 1e-2)
      CHECK((f2.apply(x) - x).norm() > 1e-6);
    if ((x + kSuspensionBasepoint).norm() > 1e-2)
      CHECK((af2.apply(x) - x).norm() > 1e-6);
  }
}

TEST_CASE("catalog ids round trip") {
  const char *ids[] = {"identity", "antipodal", "f2", "A*f2", "f1", "A*f1(P=south,eps=0.2)",
                       "const(P=[0,0,1])", "UP(P=north)", "WP(P=[1,0,0])", "constRP2(P=north)",
                       "UP(P=[0.5,0.25])", "A*identity"};
  for (const char *id : ids) {
    const auto m = CatalogMap::parse(id);
    const auto again = CatalogMap::parse(m.id());
    CHECK(again.id() == m.id());
    CHECK(again.kind() == m.kind());
    for (const auto &x : sample_points(10, 12))
      CHECK((again.apply(x) - m.apply(x)).norm() < 1e-12);
  }
  CHECK(CatalogMap::parse("A*f2").post_antipodal());
  CHECK(CatalogMap::parse(" f1 ( P = north , eps = 0.3 ) ").epsilon() == doctest::Approx(0.3));
  CHECK_THROWS_AS(CatalogMap::parse("bogus"), Error);
  CHECK_THROWS_AS(CatalogMap::parse("UP(P=[1,2"), Error);
  CHECK_THROWS_AS(CatalogMap::parse("A*WP(P=north)"), Error);
}

TEST_CASE("RP^2 representatives") {
  const auto pts = rp2_arc_points(3);
  REQUIRE(pts.size() == 3);
  for (int k = 1; k <= 3; ++k) {
    const double ang = k * kPi / 8;
    CHECK((pts[k - 1].vec() - Vec3(std::cos(ang), 0, std::sin(ang))).norm() < 1e-12);
  }
  GridSpec coarse;
  coarse.resolution = 2e-2;
  coarse.cluster_radius = 5e-2;
  const auto nt = build_rp2_representative(2, Rp2Class::NonTrivial, coarse);
  REQUIRE(nt.size() == 2);
  CHECK(nt[0].kind() == MapKind::WP);
  const auto tr = build_rp2_representative(3, Rp2Class::Trivial, coarse);
  REQUIRE(tr.size() == 3);
  CHECK(tr[2].kind() == MapKind::ConstantRP2);
  CHECK(to_string(Rp2Class::NonTrivial) != to_string(Rp2Class::Trivial));
}
