#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "esk/encoder.hpp"
#include "esk/satcore.hpp"
#include "esk/signotope.hpp"
#include "testutil.hpp"

using namespace esk;

namespace {

problem_spec spec_of(const std::string& args) {
  std::vector<std::string> tokens;
  std::istringstream is(args);
  std::string t;
  while (is >> t) tokens.push_back(t);
  return parse_problem_args(tokens);
}

sat_result decide(const problem_spec& s) {
  auto f = build_cnf(s);
  solver_options opt;
  opt.priority_vars = color_priority_vars(f);
  return solve(f, {}, opt);
}

}  // namespace

TEST_CASE("axiom clause and symmetry-breaking unit counts at n=4") {
  problem_spec s;
  s.n = 4;
  s.symmetry_breaking = true;
  auto f = build_cnf(s);
  int units = 0, ternary = 0;
  for (const auto& c : f.clauses) {
    if (c.size() == 1) ++units;
    if (c.size() == 3) ++ternary;
  }
  CHECK(units == 3);
  CHECK(ternary == 8);
  CHECK(f.clauses.size() == 11);
}

TEST_CASE("grid construction") {
  auto g1 = abscissa_grid::make(3, 1);
  CHECK(g1.xs == std::vector<bigint>{0, 1, 2});
  auto g5 = abscissa_grid::make(5, 2);
  CHECK(g5.xs == std::vector<bigint>{-2, -1, 0, 1, 2});
  auto g4 = abscissa_grid::make(4, 2);
  CHECK(g4.xs == std::vector<bigint>{-2, -1, 1, 2});
  auto g13 = abscissa_grid::make(13, 4);
  CHECK(g13.xs[0] == -1024);  // -4^5
  CHECK(g13.xs[6] == 0);
  CHECK(g13.xs[12] == 1024);
  auto g19 = abscissa_grid::make(19, 4);
  CHECK(g19.xs[0] == -65536);  // matches the published exponential sets
  CHECK(g19.xs[18] == 65536);
}

TEST_CASE("linear links substitute grid coefficients") {
  problem_spec s;
  s.n = 3;
  auto h = build_linear(s, abscissa_grid::make(3, 1));
  REQUIRE(h.links.size() == 2);
  // (x_c-x_b) y_a? coefficient order is (y_a, y_b, y_c) = (1, -2, 1)
  CHECK(h.links[0].coef == std::array<bigint, 3>{1, -2, 1});
  CHECK(h.links[0].dir == +1);
  CHECK(h.links[1].dir == -1);
}

TEST_CASE("dimacs emission basics") {
  cnf_formula empty;
  CHECK(emit_dimacs(empty) == "p cnf 0 0\n");
  cnf_formula f;
  f.var_count = 2;
  f.add_clause({1, -2});
  CHECK(emit_dimacs(f) == "p cnf 2 1\n1 -2 0\n");
}

TEST_CASE("dimacs round-trip is a fixpoint") {
  problem_spec s;
  s.n = 4;
  auto f = build_cnf(s);
  auto text = emit_dimacs(f);
  auto parsed = parse_dimacs(text);
  CHECK(parsed.var_count == f.var_count);
  CHECK(parsed.clauses == f.clauses);
  CHECK(emit_dimacs(parsed).substr(emit_dimacs(parsed).find("p cnf")) ==
        text.substr(text.find("p cnf")));
}

TEST_CASE("smt2 emission is token balanced and well formed") {
  auto s = spec_of("nc1=0 tr2=0 n=6");
  auto text = emit_smt2(s, abscissa_grid::make(6, 1));
  CHECK(text.find("(set-logic QF_LIA)") == 0);
  CHECK(text.find("(check-sat)") != std::string::npos);
  long depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    CHECK(depth >= 0);
  }
  CHECK(depth == 0);
}

TEST_CASE("parse_problem_args maps generator parameters") {
  auto s = spec_of("nc1=0 tr2=0 n=13");
  CHECK(s.n == 13);
  REQUIRE(s.constraints.size() == 2);
  CHECK(s.constraints[0].kind == structure_kind::nonconvex4);
  CHECK(s.constraints[0].color == 0);
  CHECK(s.constraints[1].kind == structure_kind::triangle);
  CHECK(s.constraints[1].color == 1);
  auto r = spec_of("mode=edges tr1=0 tr2=99 n=16");
  CHECK(r.constraints[0].kind == structure_kind::ramsey_triangle);
  CHECK(r.constraints[1].limit == no_limit);
  CHECK_THROWS_AS(spec_of("bogus1=2 n=4"), spec_invalid_error);
}

// The exit gate for the encoder: at small n, the models of the formula
// (projected to orientation and color variables) are exactly the pairs the
// abstract checker accepts.
TEST_CASE("soundness and completeness by exhaustive enumeration") {
  std::vector<std::string> instances = {
      "tr1=0 tr2=0 n=5",
      "tr1=1 tr2=1 n=5",
      "cv1=0 cv2=1 n=5",
      "nc1=0 nc2=0 n=5",
      "nc1=1 nc2=0 n=5",
      "is1=0 is2=0 n=5",
      "is1=1 is2=1 n=5",
      "cv51=0 n=6",
      "hex1=0 n=6",
      "hex1=1 n=7",
      "hexsub1=2 n=6",
      "hexex1=0,1 n=6",
      "pr1=0 tr2=0 n=4",
  };
  for (const auto& inst : instances) {
    auto spec = spec_of(inst);
    spec.symmetry_breaking = false;
    auto f = build_cnf(spec);
    const int n = spec.n;
    const int c = spec.num_colors();
    solver sat(f);
    long models = 0, accepted = 0;
    auto none = std::function<bool(const signotope&)>();
    enumerate_signotopes(n, false, none, [&](const signotope& sig) {
      long ncolorings = 1;
      for (int i = 0; i < n; ++i) ncolorings *= c;
      for (long mask = 0; mask < ncolorings; ++mask) {
        std::vector<int> colors(n);
        long m = mask;
        for (int i = 0; i < n; ++i) {
          colors[i] = static_cast<int>(m % c);
          m /= c;
        }
        std::vector<int> assumptions;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            for (int cc = b + 1; cc < n; ++cc) {
              int v = f.registry.lookup(var_kind::L, {a, b, cc});
              assumptions.push_back(sig.sign(a, b, cc) > 0 ? v : -v);
            }
        if (c > 1)
          for (int a = 0; a < n; ++a)
            assumptions.push_back(-f.registry.lookup(var_kind::C, {colors[a], a}));
        bool model_ok = sat.solve(assumptions).is_sat();
        bool check_ok = find_forbidden_abstract(sig, colors, nullptr, spec).empty();
        if (model_ok) ++models;
        if (check_ok) ++accepted;
        REQUIRE(model_ok == check_ok);
      }
      return true;
    });
    CHECK(models == accepted);
    INFO(inst);
    CHECK(models > 0);
  }
}

TEST_CASE("edge-colored soundness and completeness at n=5") {
  for (const std::string inst :
       {std::string("mode=edges tr1=0 tr2=0 n=5"), std::string("mode=edges tr1=99 cv42=99 n=5"),
        std::string("mode=edges tr1=1 tr2=0 n=5")}) {
    auto spec = spec_of(inst);
    spec.symmetry_breaking = false;
    auto f = build_cnf(spec);
    const int n = spec.n;
    const int c = spec.num_colors();
    const int edges = n * (n - 1) / 2;
    solver sat(f);
    auto none = std::function<bool(const signotope&)>();
    enumerate_signotopes(n, false, none, [&](const signotope& sig) {
      for (long mask = 0; mask < (1L << edges); ++mask) {
        edge_coloring ec(n);
        long m = mask;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b) {
            ec.set(a, b, static_cast<int>(m % c));
            m /= c;
          }
        std::vector<int> assumptions;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            for (int cc = b + 1; cc < n; ++cc) {
              int v = f.registry.lookup(var_kind::L, {a, b, cc});
              assumptions.push_back(sig.sign(a, b, cc) > 0 ? v : -v);
            }
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            assumptions.push_back(-f.registry.lookup(var_kind::EC, {ec.get(a, b), a, b}));
        bool model_ok = sat.solve(assumptions).is_sat();
        bool check_ok = find_forbidden_abstract(sig, {}, &ec, spec).empty();
        REQUIRE(model_ok == check_ok);
      }
      return true;
    });
  }
}

TEST_CASE("threshold probes against the published small values") {
  // h_nc(4,2;4,2) = 9
  CHECK(decide(spec_of("nc1=2 nc2=2 n=8")).is_sat());
  CHECK(decide(spec_of("nc1=2 nc2=2 n=9")).is_unsat());
  // h_nc(4,3;4,3) = 7
  CHECK(decide(spec_of("nc1=3 nc2=3 n=6")).is_sat());
  CHECK(decide(spec_of("nc1=3 nc2=3 n=7")).is_unsat());
  // R_EC(3,2;3,2) = 6
  CHECK(decide(spec_of("mode=edges tr1=2 tr2=2 n=5")).is_sat());
  CHECK(decide(spec_of("mode=edges tr1=2 tr2=2 n=6")).is_unsat());
  // R_EC(3,1;3,2) = 7
  CHECK(decide(spec_of("mode=edges tr1=1 tr2=2 n=6")).is_sat());
  CHECK(decide(spec_of("mode=edges tr1=1 tr2=2 n=7")).is_unsat());
  // R_C(3,4) = 11
  CHECK(decide(spec_of("mode=edges tr1=99 cv42=99 n=10")).is_sat());
  CHECK(decide(spec_of("mode=edges tr1=99 cv42=99 n=11")).is_unsat());
}

TEST_CASE("decompose: canonical prefixes and the residual subproblem") {
  // two interchangeable colors, prefix 1: single subproblem, no residual
  auto s2 = spec_of("nc1=0 nc2=0 n=6");
  auto d1 = decompose(s2, 1);
  CHECK(d1.subproblems.size() == 1);
  CHECK(d1.live_count() == 1);

  // four interchangeable colors, prefix 3: the five canonical prefixes
  auto s4 = spec_of("tr1=2 tr2=2 tr3=2 tr4=2 n=6");
  auto d3 = decompose(s4, 3);
  std::set<std::vector<int>> prefixes;
  for (const auto& sub : d3.subproblems)
    if (!sub.residual) prefixes.insert(sub.prefix_colors);
  CHECK(prefixes == std::set<std::vector<int>>{
                        {0, 0, 0}, {0, 0, 1}, {0, 1, 0}, {0, 1, 1}, {0, 1, 2}});

  // with the no-3-run rule, 111 is pruned and a residual appears
  auto d3r = decompose(s4, 3, {{-1, 2}});
  CHECK(d3r.live_count() == 4);
  CHECK(d3r.pruned == 1);
  CHECK(d3r.subproblems.size() == 5);
  CHECK(d3r.subproblems.back().residual);

  // inequivalent colors are not canonicalized
  auto sm = spec_of("nc1=0 tr2=0 n=6");
  auto dm = decompose(sm, 2);
  CHECK(dm.live_count() == 4);
}

TEST_CASE("decompose reproduces the published subproblem counts") {
  // two interchangeable colors, prefix 13, no 4 consecutive points of one
  // color: 1705 live prefixes plus the residual
  auto s = spec_of("nc1=0 nc2=0 n=26");
  auto d = decompose(s, 13, {{-1, 3}});
  CHECK(d.live_count() == 1705);
  CHECK(static_cast<long>(d.subproblems.size()) == 1706);

  // asymmetric pair, runs of the first color <= 4 and of the second <= 2,
  // prefix 13: 2386 live prefixes plus the residual
  auto s2 = spec_of("cv1=0 tr2=0 n=26");
  auto d2 = decompose(s2, 13, {{0, 4}, {1, 2}});
  CHECK(d2.live_count() == 2386);
  CHECK(static_cast<long>(d2.subproblems.size()) == 2387);
}

TEST_CASE("decomposition covers the model space") {
  auto spec = spec_of("tr1=0 tr2=0 n=5");
  spec.symmetry_breaking = false;
  auto base = build_cnf(spec);
  auto proj = l_variables(base, spec.n);
  {
    auto cvars = color_priority_vars(base);
    proj.insert(proj.end(), cvars.begin(), cvars.end());
  }
  std::set<std::vector<int>> all;
  solve_all(base, proj, [&](const std::vector<int>& m) {
    all.insert(m);
    return true;
  });
  // canonical colorings only (first point color 0): filter
  std::set<std::vector<int>> canonical;
  for (const auto& m : all) {
    int c0 = base.registry.lookup(var_kind::C, {0, 0});
    bool first_is_color0 = false;
    for (int lit : m)
      if (std::abs(lit) == c0) first_is_color0 = lit < 0;
    if (first_is_color0) canonical.insert(m);
  }
  auto d = decompose(spec, 2, {{-1, 1}});  // no two consecutive same colors
  std::set<std::vector<int>> covered;
  for (const auto& sub : d.subproblems) {
    auto f = build_cnf(spec);
    apply_subproblem(f, spec, d, sub);
    solve_all(f, proj, [&](const std::vector<int>& m) {
      CHECK(covered.insert(m).second);  // disjointness
      return true;
    });
  }
  CHECK(covered == canonical);
}

TEST_CASE("totalizer outputs count exactly") {
  cnf_formula f;
  f.var_count = 5;
  std::vector<int> inputs{1, 2, 3, 4, 5};
  auto outs = add_totalizer(f, inputs);
  REQUIRE(outs.size() == 5);
  for (int mask = 0; mask < 32; ++mask) {
    std::vector<int> assumptions;
    int cnt = 0;
    for (int v = 1; v <= 5; ++v) {
      if ((mask >> (v - 1)) & 1) {
        assumptions.push_back(v);
        ++cnt;
      } else {
        assumptions.push_back(-v);
      }
    }
    auto r = solve(f, assumptions);
    REQUIRE(r.is_sat());
    for (int j = 1; j <= 5; ++j) CHECK(r.model[std::abs(outs[j - 1])] == (cnt >= j));
  }
}

TEST_CASE("cardinality probes from the minimization facts") {
  // n=4: a 4-subset with no empty convex quadrilateral exists
  {
    auto f = build_axioms(4, false);
    add_cardinality(f, 4, count_kind::empty_convex4, 0, count_dir::at_most);
    CHECK(solve(f).is_sat());
  }
  // n=6: at most 2 empty convex 4-gons impossible, 3 possible
  {
    auto f = build_axioms(6, true);
    add_cardinality(f, 6, count_kind::empty_convex4, 2, count_dir::at_most);
    CHECK(solve(f).is_unsat());
  }
  {
    auto f = build_axioms(6, true);
    add_cardinality(f, 6, count_kind::empty_convex4, 3, count_dir::at_most);
    CHECK(solve(f).is_sat());
  }
  // n=5: at most 6 empty triangles impossible, 7 possible
  {
    auto f = build_axioms(5, true);
    add_cardinality(f, 5, count_kind::empty_triangle, 6, count_dir::at_most);
    CHECK(solve(f).is_unsat());
  }
  {
    auto f = build_axioms(5, true);
    add_cardinality(f, 5, count_kind::empty_triangle, 7, count_dir::at_most);
    CHECK(solve(f).is_sat());
  }
}

TEST_CASE("solve_all with minimization matches the census column at n=5") {
  auto f = build_axioms(5, false);
  add_cardinality(f, 5, count_kind::empty_convex4, 1, count_dir::at_most);
  auto proj = l_variables(f, 5);
  CHECK(solve_all(f, proj, nullptr) == 22);
}

TEST_CASE("TR variables are one-directional upper-bound witnesses") {
  // in every model of a triangle-limited spec, TR true implies the signotope
  // count is within the bound (n=5 is the satisfiable side of h(3,1;3,1)=6)
  auto spec = spec_of("tr1=1 tr2=1 n=5");
  auto f = build_cnf(spec);
  solver s(f);
  auto r = s.solve();
  REQUIRE(r.is_sat());
  auto sig = signotope_from_model(f, r.model, 5);
  for (int a = 0; a < 5; ++a)
    for (int b = a + 1; b < 5; ++b)
      for (int c = b + 1; c < 5; ++c) {
        int v = f.registry.lookup(var_kind::TR, {a, b, c, 1});
        if (v != 0 && r.model[v]) CHECK(count_interior(sig, a, b, c) <= 1);
      }
}
