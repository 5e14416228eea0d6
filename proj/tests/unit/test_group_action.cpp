#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"

#include "nvfix/error.hpp"
#include "nvfix/group_action.hpp"

using namespace nvfix;

namespace {

Permutation P(const char *text, int n) { return Permutation::parse(text, n); }

// All of S_n by std::next_permutation.
std::vector<Permutation> symmetric_group(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    img[i] = i + 1;
  std::vector<Permutation> out;
  do {
    out.push_back(Permutation::from_images(img));
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

ErrorCode code_of(auto &&f) {
  try {
    f();
  } catch (const Error &e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

} // namespace

TEST_CASE("permutation parsing and notation") {
  const auto a = P("(1 2)(3 4)", 4);
  CHECK(a.to_string() == "[2,1,4,3]");
  CHECK(a.to_cycle_string() == "(1 2)(3 4)");
  CHECK(P("[2,1,4,3]", 4) == a);
  CHECK(P("[2,1,4,3]", 0) == a);
  CHECK(P("()", 3).is_identity());
  CHECK(P("id", 3).is_identity());
  CHECK(P("(1 2 3)", 3).to_string() == "[2,3,1]");
  CHECK(P("(1 2 3)", 3).order() == 3);
  // cycles compose right to left: (1 2)(2 3) sends 3 -> 2 -> 1
  CHECK(P("(1 2)(2 3)", 3)(3) == 1);
  CHECK(code_of([] { P("(1 4)", 3); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { P("[1,1,2]", 3); }) == ErrorCode::ParseError);
  CHECK(code_of([] { P("(1 2", 3); }) == ErrorCode::ParseError);
  CHECK(code_of([] { P("[2,1]", 3); }) == ErrorCode::DegreeMismatch);
}

TEST_CASE("composition is a(b(i))") {
  const auto a = P("(1 2)", 3), b = P("(2 3)", 3);
  const auto ab = a * b;
  for (int i = 1; i <= 3; ++i)
    CHECK(ab(i) == a(b(i)));
  CHECK((a * a.inverse()).is_identity());
}

TEST_CASE("generate_group examples") {
  CHECK(generate_group({}, 3).order() == 1);
  CHECK(generate_group({}, 3).elements().front().is_identity());
  const std::vector<Permutation> t{P("(1 2)", 2)};
  CHECK(generate_group(t, 2).order() == 2);
  const std::vector<Permutation> s3{P("(1 2)", 3), P("(1 2 3)", 3)};
  const auto G = generate_group(s3, 3);
  CHECK(G.order() == 6);
  // the closure is all of S_3 by direct enumeration
  auto all = symmetric_group(3);
  std::sort(all.begin(), all.end());
  CHECK(G.elements() == all);
}

TEST_CASE("generate_group errors") {
  const std::vector<Permutation> wrong{P("(1 2)", 3)};
  CHECK(code_of([&] { generate_group(wrong, 4); }) == ErrorCode::DegreeMismatch);
  CHECK(code_of([] { generate_group({}, 9); }) == ErrorCode::CapExceeded);
  CHECK(generate_group({}, 9, 9).order() == 1);
}

TEST_CASE("orbit_partition examples") {
  const auto triv = orbit_partition(generate_group({}, 3));
  CHECK(triv.orbits == std::vector<std::vector<int>>{{1}, {2}, {3}});
  CHECK(triv.representatives == std::vector<int>{1, 2, 3});
  const std::vector<Permutation> c3{P("(1 2 3)", 3)};
  const auto cyc = orbit_partition(generate_group(c3, 3));
  CHECK(cyc.orbits == std::vector<std::vector<int>>{{1, 2, 3}});
  CHECK(cyc.representatives == std::vector<int>{1});
  const std::vector<Permutation> t{P("(1 2)", 3)};
  const auto o = orbit_partition(generate_group(t, 3));
  CHECK(o.orbits == std::vector<std::vector<int>>{{1, 2}, {3}});
  CHECK(o.representatives == std::vector<int>{1, 3});
  CHECK(o.orbit_of(2) == 0);
  CHECK(o.orbit_of(3) == 1);
}

TEST_CASE("stabilizer and transporter against S_3 enumeration") {
  const std::vector<Permutation> gens{P("(1 2)", 3), P("(1 2 3)", 3)};
  const auto G = generate_group(gens, 3);
  const auto all = symmetric_group(3);
  for (int i = 1; i <= 3; ++i)
    for (int j = 1; j <= 3; ++j) {
      std::vector<Permutation> expected;
      std::copy_if(all.begin(), all.end(), std::back_inserter(expected),
                   [&](const Permutation &p) { return p(i) == j; });
      std::sort(expected.begin(), expected.end());
      auto got = transporter(G, i, j);
      std::sort(got.begin(), got.end());
      CHECK(got == expected);
    }
  const auto st = stabilizer(G, 1);
  CHECK(st.order() == 2);
  CHECK(st.contains(P("(2 3)", 3)));
  CHECK(transporter(G, 1, 2).size() == 2);

  const auto triv = generate_group({}, 3);
  CHECK(stabilizer(triv, 2).is_trivial());
  CHECK(transporter(triv, 1, 2).empty());

  const std::vector<Permutation> t{P("(1 2)", 3)};
  const auto H = generate_group(t, 3);
  CHECK(stabilizer(H, 3).order() == H.order());
  const auto tr = transporter(H, 1, 2);
  REQUIRE(tr.size() == 1);
  CHECK(tr.front() == P("(1 2)", 3));

  CHECK(code_of([&] { stabilizer(G, 0); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([&] { transporter(G, 1, 4); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("freeness examples") {
  const std::vector<Permutation> k{P("(1 2)(3 4)", 4)};
  const auto v1 = is_free_stabilizer_action(generate_group(k, 4));
  CHECK(v1.free);
  CHECK_FALSE(v1.witness.has_value());

  const std::vector<Permutation> s3{P("(1 2)", 3), P("(1 2 3)", 3)};
  const auto v2 = is_free_stabilizer_action(generate_group(s3, 3));
  CHECK_FALSE(v2.free);
  REQUIRE(v2.witness.has_value());
  CHECK(v2.witness->first == 1);
  CHECK(v2.witness->second == P("(2 3)", 3));

  const std::vector<Permutation> t{P("(1 2)", 3)};
  const auto v3 = is_free_stabilizer_action(generate_group(t, 3));
  CHECK_FALSE(v3.free);
  REQUIRE(v3.witness.has_value());
  CHECK(v3.witness->first == 3);
  CHECK(v3.witness->second == P("(1 2)", 3));
}

TEST_CASE("random groups: orbit-stabilizer, cosets, partition, freeness") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = std::uniform_int_distribution<int>(1, 7)(rng);
    const int k = std::uniform_int_distribution<int>(0, 3)(rng);
    std::vector<Permutation> gens;
    for (int g = 0; g < k; ++g) {
      std::vector<int> img(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i)
        img[i] = i + 1;
      std::shuffle(img.begin(), img.end(), rng);
      gens.push_back(Permutation::from_images(img));
    }
    const auto G = generate_group(gens, n);
    const auto part = orbit_partition(G);
    // closure: identity, products and inverses stay inside
    CHECK(G.contains(Permutation::identity(n)));
    for (const auto &a : G.elements()) {
      CHECK(G.contains(a.inverse()));
      for (const auto &g : gens)
        CHECK(G.contains(g * a));
    }
    std::size_t factorial = 1;
    for (int i = 2; i <= n; ++i)
      factorial *= static_cast<std::size_t>(i);
    CHECK(factorial % G.order() == 0);

    std::set<int> covered;
    for (const auto &orbit : part.orbits)
      for (int i : orbit)
        CHECK(covered.insert(i).second);
    CHECK(covered.size() == static_cast<std::size_t>(n));

    for (int i = 1; i <= n; ++i) {
      const auto st = stabilizer(G, i);
      CHECK(G.order() == part.orbits[part.orbit_of(i)].size() * st.order());
      for (int j = 1; j <= n; ++j) {
        const auto tr = transporter(G, i, j);
        CHECK((tr.empty() || tr.size() == st.order()));
      }
    }
    const auto verdict = is_free_stabilizer_action(G);
    bool expect_free = true;
    for (const auto &a : G.elements())
      for (int i = 1; i <= n; ++i)
        if (!a.is_identity() && a.fixes(i))
          expect_free = false;
    CHECK(verdict.free == expect_free);
    if (verdict.free) {
      for (const auto &orbit : part.orbits)
        CHECK(orbit.size() == G.order());
      CHECK(static_cast<std::size_t>(n) == part.representatives.size() * G.order());
    }
  }
}
