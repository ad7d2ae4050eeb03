#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "esk/errors.hpp"
#include "esk/signotope.hpp"
#include "testutil.hpp"

using namespace esk;
using esk::test::make_points;
using esk::test::random_point_set;

namespace {

signotope all_plus(int n) {
  signotope s(n);
  for (auto& v : s.signs) v = 1;
  return s;
}

}  // namespace

TEST_CASE("axioms: all-equal signs pass") {
  CHECK(axioms_ok(all_plus(4)));
  CHECK(axioms_ok(all_plus(7)));
}

TEST_CASE("axioms: two sign changes fail") {
  // sequence (+,-,+,+) over the single 4-tuple
  signotope s(4);
  s.set_sign(0, 1, 2, +1);
  s.set_sign(0, 1, 3, -1);
  s.set_sign(0, 2, 3, +1);
  s.set_sign(1, 2, 3, +1);
  CHECK_FALSE(axioms_ok(s));
}

TEST_CASE("axioms: exactly 8 of the 16 maps on n=4 pass") {
  int pass = 0;
  for (int mask = 0; mask < 16; ++mask) {
    signotope s(4);
    for (int t = 0; t < 4; ++t) s.signs[t] = (mask >> t) & 1 ? 1 : -1;
    if (axioms_ok(s)) ++pass;
  }
  CHECK(pass == 8);
}

TEST_CASE("from_points: 4-cap gives all -1") {
  auto ps = make_points({{0L, 0L}, {1L, 2L}, {2L, 2L}, {3L, 0L}});
  auto s = from_points(ps);
  for (auto v : s.signs) CHECK(v == -1);
  CHECK(axioms_ok(s));
}

TEST_CASE("from_points: ccw triple") {
  auto ps = make_points({{0L, 0L}, {1L, 1L}, {2L, 3L}});
  CHECK(from_points(ps).sign(0, 1, 2) == +1);
}

TEST_CASE("from_points rejects non-canonical and collinear input") {
  CHECK_THROWS_AS(from_points(make_points({{3L, 0L}, {1L, 2L}, {2L, 2L}})), not_canonical_error);
  CHECK_THROWS_AS(from_points(make_points({{0L, 0L}, {1L, 1L}, {2L, 2L}})), collinear_error);
}

TEST_CASE("from_points always satisfies the axioms") {
  std::mt19937 rng(42);
  for (int it = 0; it < 400; ++it) {
    int n = 4 + static_cast<int>(rng() % 7);  // up to 10
    auto ps = random_point_set(n, rng);
    CHECK(axioms_ok(from_points(ps)));
  }
}

TEST_CASE("interior agrees with geometry") {
  auto ps = make_points({{0L, 0L}, {1L, 1L}, {2L, 5L}, {3L, 0L}});
  auto s = from_points(ps);
  CHECK(interior(s, 0, 2, 3, 1));
  CHECK_FALSE(interior(s, 1, 2, 3, 0));  // x-order exteriority
  CHECK_THROWS_AS(interior(s, 0, 2, 3, 9), index_error);
}

TEST_CASE("interior matches geometric point-in-triangle on random sets") {
  std::mt19937 rng(3);
  for (int it = 0; it < 60; ++it) {
    int n = 5 + static_cast<int>(rng() % 4);  // 5..8
    auto ps = random_point_set(n, rng);
    auto s = from_points(ps);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          for (int x = 0; x < n; ++x) {
            if (x == a || x == b || x == c) continue;
            int s1 = orient(ps[a], ps[b], ps[x]);
            int s2 = orient(ps[b], ps[c], ps[x]);
            int s3 = orient(ps[c], ps[a], ps[x]);
            bool geo = (s1 == s2 && s2 == s3);
            CHECK(interior(s, a, b, c, x) == geo);
          }
  }
}

TEST_CASE("enumerate_signotopes counts") {
  auto none = std::function<bool(const signotope&)>();
  CHECK(enumerate_signotopes(3, false, none, none) == 2);
  CHECK(enumerate_signotopes(4, false, none, none) == 8);
  CHECK_THROWS_AS(enumerate_signotopes(12, false, none, none), cap_exceeded_error);
}

TEST_CASE("enumerate matches brute force over all sign maps for n=5") {
  auto none = std::function<bool(const signotope&)>();
  long brute = 0;
  for (int mask = 0; mask < 1024; ++mask) {
    signotope s(5);
    for (int t = 0; t < 10; ++t) s.signs[t] = (mask >> t) & 1 ? 1 : -1;
    if (axioms_ok(s)) ++brute;
  }
  CHECK(enumerate_signotopes(5, false, none, none) == brute);
}

TEST_CASE("symmetry breaking restricts to s(0,b,c)=+1 and is a subset") {
  auto none = std::function<bool(const signotope&)>();
  std::set<std::vector<int8_t>> all;
  enumerate_signotopes(5, false, none, [&](const signotope& s) {
    all.insert(s.signs);
    return true;
  });
  long sb_count = enumerate_signotopes(5, true, none, [&](const signotope& s) {
    CHECK(all.count(s.signs) == 1);
    for (int b = 1; b < 5; ++b)
      for (int c = b + 1; c < 5; ++c) CHECK(s.sign(0, b, c) == +1);
    return true;
  });
  CHECK(sb_count > 0);
  CHECK(sb_count < static_cast<long>(all.size()));
}

TEST_CASE("enumeration with a minimizing predicate: 4 signotopes minimize empty 4-gons at n=4") {
  problem_spec spec;
  spec.n = 4;
  spec.constraints = {{structure_kind::convex4, 0, 0, {}}};
  auto pred = std::function<bool(const signotope&)>([&](const signotope& s) {
    return find_forbidden_abstract(s, {}, nullptr, spec).empty();
  });
  auto none = std::function<bool(const signotope&)>();
  CHECK(enumerate_signotopes(4, false, pred, none) == 4);
}

TEST_CASE("find_forbidden_abstract: convex position n=5 monochrome, empty 4-gons") {
  // 5 points in convex position: all consecutive quadruples are empty
  auto ps = make_points({{0L, 0L}, {1L, -3L}, {2L, -4L}, {3L, -3L}, {4L, 0L}});
  auto s = from_points(ps);
  problem_spec spec;
  spec.n = 5;
  spec.constraints = {{structure_kind::convex4, 0, 0, {}}};
  auto out = find_forbidden_abstract(s, {}, nullptr, spec);
  CHECK(out.size() == 5);  // C(5,4) = 5, all empty convex
}

TEST_CASE("cross-module oracle: abstract and geometric violations coincide") {
  std::mt19937 rng(17);
  std::vector<problem_spec> specs;
  {
    problem_spec sp;
    sp.hexagon_relaxation = hex_mode::exact;
    sp.constraints = {{structure_kind::triangle, 0, 0, {}}, {structure_kind::triangle, 1, 1, {}}};
    specs.push_back(sp);
    sp.constraints = {{structure_kind::convex4, 0, 1, {}}, {structure_kind::nonconvex4, 1, 0, {}}};
    specs.push_back(sp);
    sp.constraints = {{structure_kind::island4, 0, 1, {}}, {structure_kind::convex5, 1, 0, {}}};
    specs.push_back(sp);
    sp.constraints = {{structure_kind::hexagon, 0, 1, {}}, {structure_kind::pair_, 1, 0, {}}};
    specs.push_back(sp);
    sp.constraints = {{structure_kind::hex_ex, 0, 0, {0, 2}},
                      {structure_kind::hex_sub, 1, 0, {0, 1}}};
    specs.push_back(sp);
  }
  for (int it = 0; it < 40; ++it) {
    int n = 6 + static_cast<int>(rng() % 4);  // 6..9
    auto ps = random_point_set(n, rng, 2);
    auto s = from_points(ps);
    std::vector<int> colors;
    for (auto& p : ps.pts) colors.push_back(p.color);
    for (auto spec : specs) {
      spec.n = n;
      auto geo = find_forbidden(ps, nullptr, spec);
      auto abs = find_forbidden_abstract(s, colors, nullptr, spec);
      CHECK(geo == abs);
    }
  }
  // edge-colored kinds
  for (int it = 0; it < 25; ++it) {
    int n = 6 + static_cast<int>(rng() % 3);
    auto ps = random_point_set(n, rng);
    auto s = from_points(ps);
    auto ec = esk::test::random_edge_coloring(n, rng, 2);
    problem_spec spec;
    spec.n = n;
    spec.mode = color_mode::edges;
    spec.hexagon_relaxation = hex_mode::exact;
    spec.constraints = {{structure_kind::ramsey_triangle, 0, 0, {}},
                        {structure_kind::ramsey_convex4, 1, no_limit, {}}};
    auto geo = find_forbidden(ps, &ec, spec);
    auto abs = find_forbidden_abstract(s, {}, &ec, spec);
    CHECK(geo == abs);
    spec.constraints = {{structure_kind::ramsey_convex5, 0, 2, {}},
                        {structure_kind::ramsey_triangle, 1, 1, {}}};
    geo = find_forbidden(ps, &ec, spec);
    abs = find_forbidden_abstract(s, {}, &ec, spec);
    CHECK(geo == abs);
  }
}

TEST_CASE("signotope text format round-trips") {
  std::mt19937 rng(9);
  auto ps = random_point_set(7, rng);
  auto s = from_points(ps);
  auto s2 = signotope_from_text(to_text(s));
  CHECK(s == s2);
}
