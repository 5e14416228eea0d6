#include <cmath>
#include <complex>

#include "doctest.h"

#include "nvfix/error.hpp"
#include "nvfix/numerics.hpp"

using namespace nvfix;

namespace {

GridSpec coarse(double res = 1e-2) {
  GridSpec g;
  g.resolution = res;
  g.cluster_radius = 5 * res;
  g.index_radius = 2.5e-3;
  return g;
}

// Rational map z -> z^k on the Riemann sphere, via stereographic projection
// from the north pole.
SurfaceMap power_map(int k) {
  SurfaceMap m;
  m.id = "z^" + std::to_string(k);
  m.f = [k](const Vec3 &x) -> Vec3 {
    if (x.z() > 1 - 1e-15)
      return Vec3(0, 0, 1);
    const std::complex<double> z(x.x() / (1 - x.z()), x.y() / (1 - x.z()));
    const auto w = std::pow(z, k);
    const double r2 = std::norm(w);
    return Vec3(2 * w.real(), 2 * w.imag(), r2 - 1) / (r2 + 1);
  };
  return m;
}

int index_sum(const FixedPointReport &r) {
  int s = 0;
  for (const auto &c : r.clusters)
    s += c.index.value_or(1000);
  return s;
}

} // namespace

TEST_CASE("winding_number examples") {
  CHECK(winding_number([](double t) { return Vec2(Vec2(std::cos(t), std::sin(t)) / 2); }, 1.0) == 1);
  CHECK(winding_number([](double t) { return Vec2(std::cos(t), -std::sin(t)); }, 1.0) == -1);
  CHECK(winding_number([](double t) { return Vec2(std::cos(3 * t), std::sin(3 * t)); }, 1.0) == 3);
  CHECK(winding_number([](double) { return Vec2(1, 0.5); }, 1.0) == 0);
  try {
    winding_number([](double t) { return Vec2(std::cos(t) - 1, std::sin(t)); }, 1.0);
    FAIL("expected ZeroOnCircle");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::ZeroOnCircle);
  }
}

TEST_CASE("planar_index examples") {
  const auto v = [](const Vec2 &p) { return Vec2(p.x() * p.x() - p.y() * p.y(), 2 * p.x() * p.y()); };
  CHECK(planar_index(v, Vec2(0, 0), 0.1) == 2);
  const auto saddle = [](const Vec2 &p) { return Vec2(p.x(), -p.y()); };
  CHECK(planar_index(saddle, Vec2(0, 0), 0.1) == -1);
}

TEST_CASE("fixed points of catalog maps") {
  const auto g = coarse();
  const auto anti = find_fixed_points(to_surface_map(CatalogMap::antipodal()), g);
  CHECK(anti.clusters.empty());
  CHECK(anti.total_count == 0);

  const auto k = find_fixed_points(to_surface_map(CatalogMap::constant(SpherePoint::north())), g);
  REQUIRE(k.clusters.size() == 1);
  CHECK((k.clusters[0].location - Vec3(0, 0, 1)).norm() < 1e-6);
  CHECK(k.clusters[0].index == 1);

  const auto f1 = find_fixed_points(to_surface_map(make_f1(SpherePoint::north())), g);
  REQUIRE(f1.clusters.size() == 1);
  CHECK((f1.clusters[0].location - Vec3(0, 0, 1)).norm() < 1e-6);
  CHECK(f1.clusters[0].index == 2);

  const auto f2 = find_fixed_points(to_surface_map(CatalogMap::f2()), g);
  REQUIRE(f2.clusters.size() == 1);
  // the basepoint is a degenerate zero, so location is only good to about res^2
  CHECK((f2.clusters[0].location - kSuspensionBasepoint).norm() < 1e-3);
  CHECK(f2.clusters[0].index == 3);

  const auto af2 = find_fixed_points(to_surface_map(CatalogMap::f2().then_antipodal()), g);
  REQUIRE(af2.clusters.size() == 1);
  CHECK((af2.clusters[0].location + kSuspensionBasepoint).norm() < 1e-3);
  CHECK(af2.clusters[0].index == -1);
}

TEST_CASE("index sum matches the Lefschetz number 1 + deg") {
  const auto g = coarse();
  for (int k : {2, 3}) {
    const auto r = find_fixed_points(power_map(k), g);
    CHECK(r.clusters.size() == static_cast<std::size_t>(k + 1));
    CHECK(index_sum(r) == 1 + k);
  }
}

TEST_CASE("split fixed point sets are unions") {
  const std::vector<CatalogMap> maps{CatalogMap::constant(SpherePoint::north()),
                                     CatalogMap::constant(SpherePoint::south())};
  const auto r = find_fixed_points(std::span<const CatalogMap>(maps), coarse());
  REQUIRE(r.clusters.size() == 2);
  for (const auto &c : r.clusters) {
    REQUIRE(c.coordinates.size() == 1);
    const double z = c.coordinates[0] == 0 ? 1.0 : -1.0;
    CHECK((c.location - Vec3(0, 0, z)).norm() < 1e-6);
  }
}

TEST_CASE("coincidence distances") {
  const auto g = coarse();
  const auto w1 = CatalogMap::wp(rp2_arc_points(2)[0]);
  const auto w2 = CatalogMap::wp(rp2_arc_points(2)[1]);
  CHECK(coincidence_min_distance(w1, w2, g).min > 1e-2);
  const auto f = make_f1(SpherePoint::north());
  CHECK(coincidence_min_distance(f, f.then_antipodal(), g).min > 1.9);
  const auto same = coincidence_min_distance(CatalogMap::identity(), CatalogMap::up(SpherePoint::north()), g);
  CHECK(same.min < 1e-6);
}

TEST_CASE("max_displacement") {
  const auto g = coarse();
  CHECK(max_displacement([](const Vec3 &x) { return x; }, g) == doctest::Approx(0.0));
  CHECK(max_displacement([](const Vec3 &x) { return Vec3(-x); }, g) == doctest::Approx(2.0));
}

TEST_CASE("degrees") {
  const auto g = coarse();
  CHECK(degree_sphere(to_surface_map(CatalogMap::identity()), g) == 1);
  CHECK(degree_sphere(to_surface_map(CatalogMap::antipodal()), g) == -1);
  CHECK(degree_sphere(to_surface_map(CatalogMap::f2()), g) == 2);
  CHECK(degree_sphere(to_surface_map(CatalogMap::up(SpherePoint::north())), g) == 0);
  CHECK(degree_sphere(power_map(3), g) == 3);
  const auto det = degree_sphere_detailed(power_map(2), g);
  CHECK(det.regular_values.size() >= 2);
  CHECK(classify_2valued_sphere(to_surface_map(CatalogMap::antipodal()), g) == 1);
  CHECK(classify_2valued_sphere(to_surface_map(CatalogMap::f2()), g) == 2);
  CHECK(classify_2valued_sphere(to_surface_map(CatalogMap::constant(SpherePoint::north())), g) == 0);
}

TEST_CASE("classify_rp2") {
  const auto g = coarse();
  const auto nt = build_rp2_representative(2, Rp2Class::NonTrivial, g);
  const auto cnt = classify_rp2(nt, g);
  CHECK(cnt.cls == Rp2Class::NonTrivial);
  for (int c : cnt.lift_preimage_counts)
    CHECK(c % 2 == 1);
  const auto tr = build_rp2_representative(2, Rp2Class::Trivial, g);
  CHECK(classify_rp2(tr, g).cls == Rp2Class::Trivial);
  const std::vector<CatalogMap> mixed{nt[0], tr[1]};
  CHECK_THROWS_AS(classify_rp2(mixed, g), Error);
  CHECK_THROWS_AS(classify_rp2(std::span<const CatalogMap>(), g), Error);
}

TEST_CASE("refinement does not change the answer") {
  const auto map = to_surface_map(CatalogMap::f2());
  const auto a = find_fixed_points(map, coarse(2e-2));
  const auto b = find_fixed_points(map, coarse(1e-2));
  REQUIRE(a.clusters.size() == 1);
  REQUIRE(b.clusters.size() == 1);
  CHECK((a.clusters[0].location - b.clusters[0].location).norm() < coarse(1e-2).cluster_radius);
  CHECK(a.clusters[0].index == b.clusters[0].index);
}

TEST_CASE("non-isolated zero sets are reported as GridTooCoarse") {
  try {
    find_fixed_points(to_surface_map(CatalogMap::identity()), coarse(2e-2));
    FAIL("expected GridTooCoarse");
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::GridTooCoarse);
  }
}

TEST_CASE("results do not depend on the thread count") {
  auto g1 = coarse(1.5e-2), g4 = g1;
  g1.threads = 1;
  g4.threads = 4;
  const auto map = power_map(3);
  const auto a = find_fixed_points(map, g1), b = find_fixed_points(map, g4);
  REQUIRE(a.clusters.size() == b.clusters.size());
  for (std::size_t k = 0; k < a.clusters.size(); ++k) {
    CHECK(a.clusters[k].location == b.clusters[k].location);
    CHECK(a.clusters[k].index == b.clusters[k].index);
  }
  CHECK(coincidence_min_distance(CatalogMap::f2(), CatalogMap::antipodal(), g1).min ==
        coincidence_min_distance(CatalogMap::f2(), CatalogMap::antipodal(), g4).min);
}

TEST_CASE("GridSpec validation") {
  GridSpec g;
  CHECK_NOTHROW(g.validate());
  g.resolution = 0;
  CHECK_THROWS_AS(g.validate(), Error);
  g.resolution = 1e-2;
  g.cluster_radius = 1e-3;
  CHECK_THROWS_AS(g.validate(), Error);
  CHECK_THROWS_AS(find_fixed_points(to_surface_map(CatalogMap::f2()), g), Error);
}
