#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "esk/realize.hpp"
#include "testutil.hpp"

using namespace esk;
using esk::test::make_points;
using esk::test::random_point_set;

TEST_CASE("lp_feasible: single ccw triple on the unit grid") {
  signotope s(3);
  s.set_sign(0, 1, 2, +1);
  auto grid = abscissa_grid::make(3, 1);
  auto sol = lp_feasible(s, grid);
  REQUIRE(sol.has_value());
  // y0 - 2 y1 + y2 >= 1 exactly
  bigrat lhs = sol->ys[0] - 2 * sol->ys[1] + sol->ys[2];
  CHECK(lhs >= 1);
}

TEST_CASE("round-trip: point sets are feasible on their own abscissae") {
  std::mt19937 rng(2024);
  for (int it = 0; it < 300; ++it) {
    int n = 4 + static_cast<int>(rng() % 7);  // 4..10
    auto ps = random_point_set(n, rng);
    auto s = from_points(ps);
    abscissa_grid grid;
    grid.base = 0;
    for (const auto& p : ps.pts) grid.xs.push_back(p.x);
    auto sol = lp_feasible(s, grid);
    REQUIRE(sol.has_value());
    // scaled integer ordinates give back the same signotope
    auto ys = scale_to_integers(*sol);
    point_set rp;
    for (int i = 0; i < n; ++i) rp.pts.push_back({grid.xs[i], ys[i], -1});
    CHECK(from_points(rp) == s);
  }
}

TEST_CASE("scale_to_integers") {
  rational_solution sol;
  sol.ys = {bigrat(2023, 3), bigrat(1)};
  auto ys = scale_to_integers(sol);
  CHECK(ys == std::vector<bigint>{2023, 3});
  rational_solution already;
  already.ys = {bigrat(5), bigrat(-7)};
  CHECK(scale_to_integers(already) == std::vector<bigint>{5, -7});
}

TEST_CASE("infeasible systems produce a small Farkas support") {
  // y0 - 2 y1 + y2 >= 1 and its negation cannot both hold
  linear_system sys;
  sys.n = 3;
  sys.rows.push_back({{0, 1, 2}, {1, -2, 1}, {0, 1, 2}});
  sys.rows.push_back({{0, 1, 2}, {-1, 2, -1}, {0, 1, 2}});
  auto out = lp_solve(sys);
  CHECK_FALSE(out.solution.has_value());
  CHECK(out.farkas_rows == std::vector<int>{0, 1});
}

TEST_CASE("min_structure_count on small instances") {
  CHECK(min_structure_count(3, count_kind::empty_triangle) == 1);
  CHECK(min_structure_count(4, count_kind::empty_triangle) == 3);
  CHECK(min_structure_count(5, count_kind::empty_triangle) == 7);
  CHECK(min_structure_count(4, count_kind::empty_convex4) == 0);
  CHECK(min_structure_count(5, count_kind::empty_convex4) == 1);
  CHECK(min_structure_count(6, count_kind::empty_convex4) == 3);
}

TEST_CASE("grid census at n=4 and n=5 matches the published table") {
  for (long base : {1L, 2L, 4L}) {
    auto c4 = grid_census(4, count_kind::empty_convex4, abscissa_grid::make(4, base));
    CHECK(c4.total == 4);
    CHECK(c4.realizable == 4);
    auto c5 = grid_census(5, count_kind::empty_convex4, abscissa_grid::make(5, base));
    CHECK(c5.total == 22);
    CHECK(c5.realizable == 22);
  }
}

TEST_CASE("subreduce: unsatisfiable core reports exhaustion") {
  problem_spec spec;
  spec.n = 3;
  spec.constraints = {{structure_kind::triangle, 0, 0, {}}};
  auto res = subreduce(spec, abscissa_grid::make(3, 1));
  CHECK(res.status == subreduce_status::exhausted_unrealizable);
}

TEST_CASE("subreduce: small two-colored instance realizes and verifies") {
  // h(3,0;3,0) = 9: an 8-point bicolored set without empty monochromatic
  // triangles exists and realizes on the unit grid
  problem_spec spec;
  spec.n = 8;
  spec.constraints = {{structure_kind::triangle, 0, 0, {}}, {structure_kind::triangle, 1, 0, {}}};
  auto res = subreduce(spec, abscissa_grid::make(8, 1));
  REQUIRE(res.status == subreduce_status::found);
  REQUIRE(res.certificate.has_value());
  CHECK(res.certificate->signotope_checked);
  CHECK(res.certificate->report.valid);
  CHECK(res.certificate->points.n() == 8);
}
