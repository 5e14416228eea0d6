#include "doctest.h"

#include "nvfix/descriptor.hpp"

using namespace nvfix;

namespace {

Permutation P(const char *t, int n) { return Permutation::parse(t, n); }

NValuedMapDescriptor torus(int n, const char *a, const char *b) {
  return {{SurfaceKind::Torus}, n, {P(a, n), P(b, n)}, {}};
}

bool has_code(const std::vector<Violation> &v, ErrorCode c) {
  for (const auto &x : v)
    if (x.code == c)
      return true;
  return false;
}

} // namespace

TEST_CASE("surface descriptors") {
  CHECK(SurfaceDescriptor{SurfaceKind::Disc}.pi1() == "trivial");
  CHECK(SurfaceDescriptor{SurfaceKind::Sphere}.generator_count() == 0);
  CHECK(SurfaceDescriptor{SurfaceKind::ProjectivePlane}.pi1() == "Z2");
  CHECK_FALSE(SurfaceDescriptor{SurfaceKind::ProjectivePlane}.orientable());
  CHECK(SurfaceDescriptor{SurfaceKind::Torus}.generator_count() == 2);
  CHECK(parse_surface_kind("rp2") == SurfaceKind::ProjectivePlane);
  CHECK(parse_surface_kind("TORUS") == SurfaceKind::Torus);
  CHECK_THROWS_AS(parse_surface_kind("klein"), Error);
}

TEST_CASE("validate examples") {
  CHECK(validate(torus(2, "(1 2)", "id")).empty());
  CHECK(has_code(validate(torus(3, "(1 2)", "(1 3)")), ErrorCode::RelationViolation));
  const NValuedMapDescriptor rp{{SurfaceKind::ProjectivePlane}, 3, {P("(1 2 3)", 3)}, {}};
  CHECK(has_code(validate(rp), ErrorCode::RelationViolation));
  const NValuedMapDescriptor rp2{{SurfaceKind::ProjectivePlane}, 2, {P("(1 2)", 2)}, {}};
  CHECK(has_code(validate(rp2), ErrorCode::NotRealizable));
  const NValuedMapDescriptor rp_ok{{SurfaceKind::ProjectivePlane}, 2, {P("id", 2)}, {}};
  CHECK(validate(rp_ok).empty());
}

TEST_CASE("validate structural violations") {
  NValuedMapDescriptor d{{SurfaceKind::Torus}, 2, {P("(1 2)", 2)}, {}};
  CHECK(has_code(validate(d), ErrorCode::GeneratorCountMismatch));
  d = {{SurfaceKind::Torus}, 3, {P("(1 2)", 2), P("id", 3)}, {}};
  CHECK(has_code(validate(d), ErrorCode::DegreeMismatch));
  d = {{SurfaceKind::Sphere}, 2, {}, TorusLinearPayload{}};
  CHECK(has_code(validate(d), ErrorCode::PayloadMismatch));
  d = {{SurfaceKind::Sphere}, 2, {}, CatalogPayload{{CatalogMap::f2()}, {}}};
  CHECK(has_code(validate(d), ErrorCode::PayloadMismatch));
  d = {{SurfaceKind::Sphere}, 1, {}, CatalogPayload{{CatalogMap::wp(SpherePoint::north())}, {}}};
  CHECK(has_code(validate(d), ErrorCode::PayloadMismatch));
  d = {{SurfaceKind::Disc}, 9, {}, {}};
  CHECK(has_code(validate(d), ErrorCode::CapExceeded));
  CHECK_THROWS_AS(require_valid(d), Error);
}

TEST_CASE("is_split") {
  CHECK(is_split(torus(3, "id", "id")));
  CHECK_FALSE(is_split(torus(2, "(1 2)", "id")));
  CHECK(is_split({{SurfaceKind::Sphere}, 5, {}, {}}));
  CHECK_THROWS_AS(is_split(torus(3, "(1 2)", "(1 3)")), Error);
}

TEST_CASE("covering_analysis examples") {
  const auto split = covering_analysis(torus(3, "id", "id"));
  CHECK(split.index_H == 1);
  CHECK(split.orbits.orbits == std::vector<std::vector<int>>{{1}, {2}, {3}});
  CHECK(split.orbits.representatives == std::vector<int>{1, 2, 3});
  CHECK(split.free);
  CHECK(split.lift_count == 6);

  const auto two = covering_analysis(torus(2, "(1 2)", "id"));
  CHECK(two.index_H == 2);
  CHECK(two.orbits.orbits == std::vector<std::vector<int>>{{1, 2}});
  CHECK(two.orbits.representatives == std::vector<int>{1});
  CHECK(two.free);
  CHECK(two.lift_count == 2);
  CHECK(two.class_multiplicity == 1);

  const auto klein = covering_analysis(torus(4, "(1 2)(3 4)", "(1 3)(2 4)"));
  CHECK(klein.L_prime.order() == 4);
  CHECK(klein.orbits.orbits.size() == 1);
  CHECK(klein.orbits.representatives == std::vector<int>{1});
  CHECK(klein.free);
  CHECK(klein.lift_count == 24);
}

TEST_CASE("covering_analysis invariants") {
  const char *cases[][3] = {{"id", "id", "4"},          {"(1 2)", "id", "4"},
                            {"(1 2)(3 4)", "(1 3)(2 4)", "4"}, {"(1 2 3)", "id", "3"},
                            {"(1 2)", "(3 4)", "4"},     {"(1 2 3)(4 5 6)", "(1 4)(2 5)(3 6)", "6"}};
  for (const auto &c : cases) {
    const int n = std::stoi(c[2]);
    const auto d = torus(n, c[0], c[1]);
    const auto a = covering_analysis(d);
    CHECK(a.index_H == a.L_prime.order());
    CHECK(is_split(d) == (a.index_H == 1));
    std::size_t covered = 0;
    for (int rep : a.orbits.representatives)
      covered += a.orbits.orbits[a.orbits.orbit_of(rep)].size();
    CHECK(covered == static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
      CHECK(a.fiber_coincidence_counts[i - 1] == a.stabilizers[i - 1].order());
      CHECK(a.fiber_coincidence_counts[i - 1] == transporter(a.L_prime, i, i).size());
    }
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k)
      f *= static_cast<std::uint64_t>(k);
    CHECK(a.lift_count == f);
    CHECK(a.class_multiplicity.has_value() == a.free);
  }
}
