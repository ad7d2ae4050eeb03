#include "esk/realize.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace esk {

linear_system system_for(const signotope& s, const abscissa_grid& grid) {
  if (grid.n() != s.n) throw grid_mismatch_error("grid size != signotope size");
  linear_system sys;
  sys.n = s.n;
  for (int a = 0; a < s.n; ++a)
    for (int b = a + 1; b < s.n; ++b)
      for (int c = b + 1; c < s.n; ++c) {
        linear_constraint row;
        row.ys = {a, b, c};
        row.triple = {a, b, c};
        row.coef = {grid.xs[c] - grid.xs[b], grid.xs[a] - grid.xs[c], grid.xs[b] - grid.xs[a]};
        if (s.sign(a, b, c) < 0)
          for (auto& v : row.coef) v = -v;
        sys.rows.push_back(std::move(row));
      }
  return sys;
}

// Simplex on the dual of {find y : A y >= 1}:
//   max 1'u  s.t.  A' u = 0, u >= 0.
// The all-zero right-hand side makes the artificial basis feasible at once
// and keeps every vertex at the origin; Bland's rule guarantees finite
// termination despite the degeneracy. At optimality the simplex multipliers
// satisfy A pi >= 1 and are returned as the ordinates; an unbounded ray is a
// Farkas certificate whose support has at most n+1 rows.
lp_outcome lp_solve(const linear_system& sys) {
  const int n = sys.n;
  const int m = static_cast<int>(sys.rows.size());
  lp_outcome out;
  if (m == 0) {
    out.solution = rational_solution{std::vector<bigrat>(n, bigrat(0))};
    return out;
  }

  // basic[i]: column in the dual; 0..m-1 are u-columns, m..m+n-1 artificials
  std::vector<int> basic(n);
  std::iota(basic.begin(), basic.end(), m);
  // row-major inverse of the basis matrix
  std::vector<bigrat> binv(static_cast<size_t>(n) * n, bigrat(0));
  for (int i = 0; i < n; ++i) binv[static_cast<size_t>(i) * n + i] = 1;

  auto column = [&](int j, std::vector<bigrat>& colv) {
    std::fill(colv.begin(), colv.end(), bigrat(0));
    const auto& r = sys.rows[j];
    for (int t = 0; t < 3; ++t) colv[r.ys[t]] += bigrat(r.coef[t]);
  };

  std::vector<bigrat> pi(n), d(n), colv(n);
  while (true) {
    ++out.pivots;
    // pi = c_B * Binv with c_B[i] = 1 for u-columns
    for (int k = 0; k < n; ++k) pi[k] = 0;
    for (int i = 0; i < n; ++i) {
      if (basic[i] < m) {
        for (int k = 0; k < n; ++k) pi[k] += binv[static_cast<size_t>(i) * n + k];
      }
    }
    // entering column: smallest u-column with positive reduced cost (Bland)
    int enter = -1;
    for (int j = 0; j < m; ++j) {
      const auto& r = sys.rows[j];
      bigrat rc(1);
      for (int t = 0; t < 3; ++t) rc -= pi[r.ys[t]] * bigrat(r.coef[t]);
      if (sign_of(rc) > 0) {
        bool already_basic = false;
        for (int i = 0; i < n; ++i)
          if (basic[i] == j) { already_basic = true; break; }
        if (!already_basic) {
          enter = j;
          break;
        }
      }
    }
    if (enter < 0) {
      // optimal: the multipliers satisfy every constraint with margin 1
      rational_solution sol;
      sol.ys.assign(pi.begin(), pi.end());
      for (const auto& r : sys.rows) {
        bigrat lhs(0);
        for (int t = 0; t < 3; ++t) lhs += bigrat(r.coef[t]) * sol.ys[r.ys[t]];
        if (lhs < 1) throw std::logic_error("simplex multipliers fail a constraint");
      }
      out.solution = std::move(sol);
      return out;
    }
    // direction d = Binv * D_enter
    column(enter, colv);
    for (int i = 0; i < n; ++i) {
      bigrat acc(0);
      for (int k = 0; k < n; ++k) {
        const bigrat& b = binv[static_cast<size_t>(i) * n + k];
        if (sign_of(b) != 0 && sign_of(colv[k]) != 0) acc += b * colv[k];
      }
      d[i] = acc;
    }
    // leaving row (Bland): u-columns block when d>0; artificials are pinned
    // at zero and block on any nonzero direction component
    int leave = -1;
    int leave_col = INT32_MAX;
    for (int i = 0; i < n; ++i) {
      bool blocks = basic[i] < m ? sign_of(d[i]) > 0 : sign_of(d[i]) != 0;
      if (blocks && basic[i] < leave_col) {
        leave_col = basic[i];
        leave = i;
      }
    }
    if (leave < 0) {
      // unbounded ray: Farkas certificate u_enter = 1, u_basic = -d
      out.farkas_rows.push_back(enter);
      for (int i = 0; i < n; ++i)
        if (basic[i] < m && sign_of(d[i]) < 0) out.farkas_rows.push_back(basic[i]);
      std::sort(out.farkas_rows.begin(), out.farkas_rows.end());
      return out;
    }
    // pivot: replace basic[leave] by enter; update Binv (eta transformation)
    bigrat piv = d[leave];
    for (int k = 0; k < n; ++k) binv[static_cast<size_t>(leave) * n + k] /= piv;
    for (int i = 0; i < n; ++i) {
      if (i == leave || sign_of(d[i]) == 0) continue;
      bigrat factor = d[i];
      for (int k = 0; k < n; ++k)
        binv[static_cast<size_t>(i) * n + k] -=
            factor * binv[static_cast<size_t>(leave) * n + k];
    }
    basic[leave] = enter;
  }
}

std::optional<rational_solution> lp_feasible(const signotope& s, const abscissa_grid& grid) {
  auto out = lp_solve(system_for(s, grid));
  return out.solution;
}

std::vector<bigint> scale_to_integers(const rational_solution& sol) {
  bigint lcm(1);
  for (const auto& q : sol.ys) {
    bigint den = q.get_den();
    bigint g;
    mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
    lcm = lcm / g * den;
  }
  std::vector<bigint> ys;
  ys.reserve(sol.ys.size());
  for (const auto& q : sol.ys) {
    bigrat scaled = q * bigrat(lcm);
    ys.push_back(bigint(scaled.get_num() / scaled.get_den()));
  }
  return ys;
}

subreduce_result subreduce(const problem_spec& spec, const abscissa_grid& grid,
                           const subreduce_options& opt) {
  auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  };
  hybrid_formula h = build_linear(spec, grid);
  solver_options sopt = opt.sat;
  if (sopt.priority_vars.empty()) sopt.priority_vars = color_priority_vars(h.cnf);
  solver sat(h.cnf, sopt);
  const int n = spec.n;
  const int c = spec.num_colors();

  subreduce_result res;
  while (res.proposals < opt.max_proposals && elapsed() < opt.max_seconds) {
    auto r = sat.solve();
    if (r.status == sat_status::resource_limit) {
      res.status = subreduce_status::resource_limit;
      break;
    }
    if (r.is_unsat()) {
      res.status = subreduce_status::exhausted_unrealizable;
      break;
    }
    ++res.proposals;
    signotope sig = signotope_from_model(h.cnf, r.model, n);
    auto lp = lp_solve(system_for(sig, grid));
    if (!lp.solution) {
      ++res.infeasible;
      std::vector<int> blocking;
      if (opt.block_full_assignment) {
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            for (int cc = b + 1; cc < n; ++cc) {
              int v = h.cnf.registry.lookup(var_kind::L, {a, b, cc});
              blocking.push_back(sig.sign(a, b, cc) > 0 ? -v : v);
            }
      } else {
        auto sys = system_for(sig, grid);
        for (int row : lp.farkas_rows) {
          const auto& t = sys.rows[row].triple;
          int v = h.cnf.registry.lookup(var_kind::L, {t[0], t[1], t[2]});
          blocking.push_back(sig.sign(t[0], t[1], t[2]) > 0 ? -v : v);
        }
      }
      sat.add_clause(blocking);
      continue;
    }
    // feasible: build the certificate
    realization_certificate cert;
    cert.grid = grid;
    cert.sig = sig;
    auto ys = scale_to_integers(*lp.solution);
    std::vector<int> colors;
    if (!spec.edge_colored() && c > 1)
      colors = point_colors_from_model(h.cnf, r.model, n, c);
    for (int i = 0; i < n; ++i) {
      point p{grid.xs[i], ys[i], -1};
      if (!colors.empty()) p.color = colors[i];
      cert.points.pts.push_back(std::move(p));
    }
    if (spec.edge_colored()) cert.edges = edge_colors_from_model(h.cnf, r.model, n, c);
    signotope check = from_points(cert.points);
    cert.signotope_checked = (check == sig);
    if (!cert.signotope_checked) throw std::logic_error("realized points disagree with signotope");
    cert.report = verify(cert.points, cert.edges ? &*cert.edges : nullptr, spec);
    if (!cert.report.valid) throw std::logic_error("certificate fails geometric verification");
    res.certificate = std::move(cert);
    res.status = subreduce_status::found;
    break;
  }
  res.seconds = elapsed();
  return res;
}

int min_structure_count(int n, count_kind kind, solver_options opt) {
  int kk = kind == count_kind::empty_triangle ? 3 : (kind == count_kind::empty_convex4 ? 4 : 5);
  int hi = 1;
  for (int i = 0; i < kk; ++i) hi = hi * (n - i) / (i + 1);
  int lo = 0;
  // find the least bound M with SAT(count <= M)
  while (lo < hi) {
    int mid = lo + (hi - lo) / 2;
    auto f = build_axioms(n, true);
    add_cardinality(f, n, kind, mid, count_dir::at_most);
    auto r = solve(f, {}, opt);
    if (r.is_sat())
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

census_result grid_census(int n, count_kind kind, const abscissa_grid& grid, int known_min) {
  if (grid.n() != n) throw grid_mismatch_error("census grid size");
  int m = known_min >= 0 ? known_min : min_structure_count(n, kind);
  auto f = build_axioms(n, false);
  add_cardinality(f, n, kind, m, count_dir::at_most);
  auto proj = l_variables(f, n);
  census_result res;
  solve_all(f, proj, [&](const std::vector<int>& lits) {
    signotope s(n);
    size_t idx = 0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c) s.set_sign(a, b, c, lits[idx++] > 0 ? +1 : -1);
    ++res.total;
    if (lp_feasible(s, grid)) ++res.realizable;
    return true;
  });
  return res;
}

}  // namespace esk
