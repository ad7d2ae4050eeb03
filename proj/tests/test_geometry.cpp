#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "esk/errors.hpp"
#include "esk/geometry.hpp"
#include "esk/signotope.hpp"
#include "testutil.hpp"

using namespace esk;
using esk::test::make_points;
using esk::test::random_point_set;

TEST_CASE("orient basic values") {
  point a{0, 0}, b{1, 0}, c{0, 1};
  CHECK(orient(a, b, c) == +1);
  CHECK(orient({0, 0}, {1, 0}, {2, 0}) == 0);
  CHECK(orient({0, 0}, {1, 2}, {2, 2}) == -1);
}

TEST_CASE("orient antisymmetry on random triples") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> d(-50, 50);
  for (int it = 0; it < 2000; ++it) {
    point p{d(rng), d(rng)}, q{d(rng), d(rng)}, r{d(rng), d(rng)};
    CHECK(orient(p, q, r) == -orient(q, p, r));
    CHECK(orient(p, q, r) == orient(q, r, p));
  }
}

TEST_CASE("orient exactness on huge coordinates") {
  // values large enough that double arithmetic misorders them
  point a{bigint("1000000000000000000000"), bigint("1")};
  point b{bigint("2000000000000000000000"), bigint("2")};
  point c{bigint("3000000000000000000001"), bigint("3")};
  CHECK(orient(a, b, c) == -1);
}

TEST_CASE("relabel on already sorted input is the identity") {
  auto ps = make_points({{0L, 0L}, {1L, 5L}, {2L, -3L}});
  std::vector<int> perm;
  auto out = relabel_with_perm(ps, &perm);
  CHECK(perm == std::vector<int>{0, 1, 2});
  CHECK(out[0].x == 0);
  CHECK(out[2].y == -3);
}

TEST_CASE("relabel resolves duplicate x and preserves the order type") {
  auto ps = make_points({{0L, 3L}, {0L, -1L}, {5L, 2L}, {3L, 7L}});
  std::vector<int> perm;
  auto out = relabel_with_perm(ps, &perm);
  CHECK(out.x_sorted());
  auto sig = from_points(out);
  // order type must match the one computed directly on permuted originals
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c)
        CHECK(sig.sign(a, b, c) == orient(ps[perm[a]], ps[perm[b]], ps[perm[c]]));
}

TEST_CASE("relabel keeps ccw triples ccw") {
  auto ps = make_points({{0L, 0L}, {1L, 1L}, {2L, 3L}});
  auto out = relabel(ps);
  CHECK(orient(out[0], out[1], out[2]) == orient(ps[0], ps[1], ps[2]));
}

TEST_CASE("relabel rejects collinear input") {
  auto ps = make_points({{0L, 0L}, {1L, 1L}, {2L, 2L}});
  CHECK_THROWS_AS(relabel(ps), collinear_error);
}

TEST_CASE("count_interior") {
  auto ps = make_points({{0L, 0L}, {1L, 1L}, {4L, 0L}, {0L, 4L}, {5L, 5L}});
  // triangle (0,0),(4,0),(0,4): contains (1,1), not (5,5)
  CHECK(count_interior(ps, {0, 2, 3}) == 1);
  auto tri = make_points({{0L, 0L}, {4L, 0L}, {0L, 4L}});
  CHECK(count_interior(tri, {0, 1, 2}) == 0);
  CHECK_THROWS_AS(count_interior(ps, {0, 1, 2, 4}), not_convex_error);
}

TEST_CASE("count_interior is invariant under positive affine maps") {
  std::mt19937 rng(11);
  for (int it = 0; it < 50; ++it) {
    auto ps = random_point_set(7, rng);
    // pick the first convex triple's interior count, then map
    long before = count_interior(ps, {0, 3, 6});
    point_set mapped;
    for (const auto& p : ps.pts) {
      // (x,y) -> (2x + y + 3, x + y - 5), det = 1 > 0
      mapped.pts.push_back({2 * p.x + p.y + 3, p.x + p.y - 5, p.color});
    }
    long after = count_interior(mapped, {0, 3, 6});
    CHECK(before == after);
  }
}

TEST_CASE("hexagon census: convex hexagon alone") {
  auto ps = make_points({{0L, 0L}, {2L, -2L}, {5L, -2L}, {7L, 0L}, {5L, 2L}, {2L, 2L}});
  auto census = hexagon_census(ps);
  CHECK(census == std::map<long, long>{{0, 1}});
}

TEST_CASE("hexagon census: perturbed hexagon plus near-center point") {
  auto ps = make_points(
      {{0L, 1L}, {2L, -2L}, {5L, -3L}, {7L, 0L}, {5L, 2L}, {2L, 3L}, {3L, 0L}});
  auto census = hexagon_census(ps);
  // brute force: 7 subsets of size 6; exactly one is the convex hull hexagon
  std::map<long, long> brute;
  for (int skip = 0; skip < 7; ++skip) {
    std::vector<int> v;
    for (int i = 0; i < 7; ++i)
      if (i != skip) v.push_back(i);
    // convex iff no vertex inside a triangle of three others
    bool convex = true;
    for (int z : v)
      for (int i = 0; i < 6 && convex; ++i)
        for (int j = i + 1; j < 6 && convex; ++j)
          for (int k = j + 1; k < 6 && convex; ++k) {
            int a = v[i], b = v[j], cc = v[k];
            if (z == a || z == b || z == cc) continue;
            int s1 = orient(ps[a], ps[b], ps[z]);
            int s2 = orient(ps[b], ps[cc], ps[z]);
            int s3 = orient(ps[cc], ps[a], ps[z]);
            if (s1 == s2 && s2 == s3) convex = false;
          }
    if (!convex) continue;
    // z is strictly inside the hull iff it is strictly inside some triangle
    // of hull vertices (no point lies on a diagonal in general position)
    long inside = 0;
    for (int z = 0; z < 7; ++z) {
      if (std::find(v.begin(), v.end(), z) != v.end()) continue;
      bool in = false;
      for (int i = 0; i < 6 && !in; ++i)
        for (int j = i + 1; j < 6 && !in; ++j)
          for (int k = j + 1; k < 6 && !in; ++k) {
            int s1 = orient(ps[v[i]], ps[v[j]], ps[z]);
            int s2 = orient(ps[v[j]], ps[v[k]], ps[z]);
            int s3 = orient(ps[v[k]], ps[v[i]], ps[z]);
            if (s1 == s2 && s2 == s3 && s1 != 0) in = true;
          }
      if (in) ++inside;
    }
    brute[inside]++;
  }
  CHECK(census == brute);
  CHECK(census == std::map<long, long>{{1, 1}});
}

TEST_CASE("hexagon census total equals number of convex 6-subsets") {
  std::mt19937 rng(23);
  auto ps = random_point_set(9, rng);
  auto census = hexagon_census(ps);
  long total = 0;
  for (auto& [k, v] : census) total += v;
  // independent convexity count: every 6-subset where no point is inside
  // a triangle of three of the others
  long brute = 0;
  std::vector<int> idx(6);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == 6) {
      bool convex = true;
      for (int zi = 0; zi < 6 && convex; ++zi)
        for (int i = 0; i < 6 && convex; ++i)
          for (int j = i + 1; j < 6 && convex; ++j)
            for (int k = j + 1; k < 6 && convex; ++k) {
              if (zi == i || zi == j || zi == k) continue;
              int s1 = orient(ps[idx[i]], ps[idx[j]], ps[idx[zi]]);
              int s2 = orient(ps[idx[j]], ps[idx[k]], ps[idx[zi]]);
              int s3 = orient(ps[idx[k]], ps[idx[i]], ps[idx[zi]]);
              if (s1 == s2 && s2 == s3) convex = false;
            }
      if (convex) ++brute;
      return;
    }
    for (int i = start; i < 9; ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
  CHECK(total == brute);
}

TEST_CASE("find_forbidden: four points two colors, nc 0") {
  auto ps = make_points({{0L, 0L, 0}, {1L, 3L, 0}, {2L, 1L, 1}, {3L, 2L, 1}});
  problem_spec spec;
  spec.n = 4;
  spec.constraints = {{structure_kind::nonconvex4, 0, 0, {}},
                      {structure_kind::nonconvex4, 1, 0, {}}};
  auto out = find_forbidden(ps, nullptr, spec);
  CHECK(out.empty());
}

TEST_CASE("find_forbidden: monochrome empty triangles") {
  auto ps = make_points({{0L, 0L}, {2L, 4L}, {4L, 1L}, {6L, 5L}});
  problem_spec spec;
  spec.n = 4;
  spec.constraints = {{structure_kind::triangle, 0, 0, {}}};
  auto out = find_forbidden(ps, nullptr, spec);
  CHECK(out.size() == 4);  // every triple of 4 points in this set is empty
}

TEST_CASE("find_forbidden: convex quadrilateral detection matches brute hull test") {
  std::mt19937 rng(5);
  for (int it = 0; it < 30; ++it) {
    auto ps = random_point_set(6, rng);
    problem_spec spec;
    spec.n = 6;
    spec.constraints = {{structure_kind::convex4, 0, no_limit, {}}};
    auto out = find_forbidden(ps, nullptr, spec);
    long brute = 0;
    for (int a = 0; a < 6; ++a)
      for (int b = a + 1; b < 6; ++b)
        for (int c = b + 1; c < 6; ++c)
          for (int d = c + 1; d < 6; ++d) {
            int in[4] = {a, b, c, d};
            bool convex = true;
            for (int zi = 0; zi < 4; ++zi) {
              int t[3], m = 0;
              for (int j = 0; j < 4; ++j)
                if (j != zi) t[m++] = in[j];
              int s1 = orient(ps[t[0]], ps[t[1]], ps[in[zi]]);
              int s2 = orient(ps[t[1]], ps[t[2]], ps[in[zi]]);
              int s3 = orient(ps[t[2]], ps[t[0]], ps[in[zi]]);
              if (s1 == s2 && s2 == s3) convex = false;
            }
            if (convex) ++brute;
          }
    CHECK(static_cast<long>(out.size()) == brute);
  }
}

TEST_CASE("find_forbidden: spec mismatch errors") {
  auto ps = make_points({{0L, 0L, 0}, {1L, 3L, 0}, {2L, 1L, 0}});
  problem_spec spec;
  spec.n = 3;
  spec.mode = color_mode::edges;
  spec.constraints = {{structure_kind::ramsey_triangle, 0, 0, {}}};
  CHECK_THROWS_AS(find_forbidden(ps, nullptr, spec), spec_mismatch_error);
  edge_coloring ec(3);
  ec.set(0, 1, 0);
  ec.set(0, 2, 0);
  ec.set(1, 2, 0);
  CHECK(find_forbidden(ps, &ec, spec).size() == 1);
}

TEST_CASE("verify flags collinear input") {
  auto ps = make_points({{0L, 0L}, {1L, 1L}, {2L, 2L}});
  problem_spec spec;
  spec.n = 3;
  spec.constraints = {{structure_kind::triangle, 0, 0, {}}};
  auto rep = verify(ps, nullptr, spec);
  CHECK_FALSE(rep.valid);
  CHECK_FALSE(rep.general_position);
}

TEST_CASE("island interior count: starred quadruple") {
  // (1,1) inside triangle (0,0),(4,0),(2,5); extra points inside/outside
  auto ps = make_points({{0L, 0L, 0}, {1L, 1L, 0}, {2L, 5L, 0}, {4L, 0L, 0}, {3L, 1L, 1}});
  problem_spec spec;
  spec.n = 5;
  spec.constraints = {{structure_kind::island4, 0, 0, {}}, {structure_kind::island4, 1, 0, {}}};
  auto out = find_forbidden(ps, nullptr, spec);
  // the 4-island {0,1,2,3} has (3,1) inside its hull -> interior 1, not <= 0
  CHECK(out.empty());
  spec.constraints[0].limit = 1;
  out = find_forbidden(ps, nullptr, spec);
  REQUIRE(out.size() == 1);
  CHECK(out[0].vertices == std::vector<int>{0, 1, 2, 3});
  CHECK(out[0].interior_count == 1);
}
