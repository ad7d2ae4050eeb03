#include "esk/encoder.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace esk {

abscissa_grid abscissa_grid::make(int n, long base) {
  if (n < 1) throw spec_invalid_error("grid needs n >= 1");
  if (base < 1) throw spec_invalid_error("grid base must be >= 1");
  abscissa_grid g;
  g.base = base;
  g.xs.resize(n);
  if (base == 1) {
    for (int i = 0; i < n; ++i) g.xs[i] = i;
    return g;
  }
  bigint b(base);
  for (int i = 0; i < n; ++i) {
    if (n % 2 == 1 && i == n / 2) {
      g.xs[i] = 0;
    } else if (i < n / 2) {
      bigint p;
      mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n / 2 - i - 1));
      g.xs[i] = -p;
    } else {
      bigint p;
      mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(i - (n - 1) / 2 - 1));
      g.xs[i] = p;
    }
  }
  return g;
}

namespace {

template <typename F>
void for_subsets_of(const std::vector<int>& pool, int k, F&& fn) {
  const int n = static_cast<int>(pool.size());
  if (k > n || k < 0) return;
  std::vector<int> pick(k);
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    for (int i = 0; i < k; ++i) pick[i] = pool[idx[i]];
    fn(const_cast<const std::vector<int>&>(pick));
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <typename F>
void for_increasing_tuples(int n, int k, F&& fn) {
  std::vector<int> v(k);
  for (int i = 0; i < k; ++i) v[i] = i;
  if (k > n) return;
  while (true) {
    fn(const_cast<const std::vector<int>&>(v));
    int i = k - 1;
    while (i >= 0 && v[i] == n - k + i) --i;
    if (i < 0) break;
    ++v[i];
    for (int j = i + 1; j < k; ++j) v[j] = v[j - 1] + 1;
  }
}

unsigned long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned long long>(n - k + i) / static_cast<unsigned long long>(i);
    if (r > (1ull << 62)) return 1ull << 62;
  }
  return r;
}

// splits of k into `parts` non-negative integers
void for_splits(int k, int parts, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == parts - 1) {
      cur[pos] = left;
      fn(cur);
      return;
    }
    for (int q = 0; q <= left; ++q) {
      cur[pos] = q;
      rec(pos + 1, left - q);
    }
  };
  if (parts > 0) rec(0, k);
}

class cnf_builder {
 public:
  cnf_builder(const problem_spec& spec, const encode_options& opt) : spec_(spec), opt_(opt) {
    spec_.validate();
    n_ = spec_.n;
    c_ = spec_.num_colors();
  }

  cnf_formula build() {
    // stable variable layout: orientation vars, then color vars, then aux
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        for (int cc = b + 1; cc < n_; ++cc) f_.registry.ensure(var_kind::L, {a, b, cc});
    if (c_ > 1) {
      if (spec_.edge_colored()) {
        for (int i = 0; i < c_; ++i)
          for (int a = 0; a < n_; ++a)
            for (int b = a + 1; b < n_; ++b) f_.registry.ensure(var_kind::EC, {i, a, b});
      } else {
        for (int i = 0; i < c_; ++i)
          for (int a = 0; a < n_; ++a) f_.registry.ensure(var_kind::C, {i, a});
      }
    }
    f_.sync_var_count();

    axioms();
    colors();
    if (spec_.symmetry_breaking) symmetry_breaking();
    for (const auto& ct : spec_.constraints) prohibit(ct);
    f_.sync_var_count();
    return std::move(f_);
  }

 private:
  problem_spec spec_;
  encode_options opt_;
  int n_ = 0, c_ = 1;
  cnf_formula f_;

  int L(int a, int b, int cc) { return f_.registry.ensure(var_kind::L, {a, b, cc}); }
  // literal asserting sign(a,b,c) == s
  int lit_L(int a, int b, int cc, int s) { return s > 0 ? L(a, b, cc) : -L(a, b, cc); }
  int C(int i, int a) { return f_.registry.ensure(var_kind::C, {i, a}); }
  int EC(int i, int a, int b) { return f_.registry.ensure(var_kind::EC, {i, a, b}); }

  void clause(std::vector<int> lits) {
    if (lits.empty()) {
      // contradiction discovered at build time: encode it explicitly
      int v = f_.fresh_var();
      f_.add_clause({v});
      f_.add_clause({-v});
      return;
    }
    if (f_.literal_count() > opt_.max_literals)
      throw size_overflow_error("formula exceeds " + std::to_string(opt_.max_literals) +
                                " literals");
    f_.add_clause(std::move(lits));
  }

  void axioms() {
    // forbidden sign patterns on every 4-tuple, two polarities each
    for (int d = 3; d < n_; ++d)
      for (int cc = 2; cc < d; ++cc)
        for (int b = 1; b < cc; ++b)
          for (int a = 0; a < b; ++a) {
            int abc = L(a, b, cc), abd = L(a, b, d), acd = L(a, cc, d), bcd = L(b, cc, d);
            for (int r = -1; r <= 1; r += 2) {
              auto no = [&](int v, int s) { return s * r > 0 ? -v : v; };
              clause({no(abc, +1), no(acd, -1), no(bcd, +1)});
              clause({no(abc, +1), no(abd, -1), no(acd, +1)});
              clause({no(abc, +1), no(abd, -1), no(bcd, +1)});
              clause({no(abd, +1), no(acd, -1), no(bcd, +1)});
            }
          }
  }

  void colors() {
    if (c_ <= 1) return;
    if (spec_.edge_colored()) {
      for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b) {
          std::vector<int> exist;
          for (int i = 0; i < c_; ++i) exist.push_back(-EC(i, a, b));
          clause(exist);
          for (int i = 0; i < c_; ++i)
            for (int j = i + 1; j < c_; ++j) clause({EC(i, a, b), EC(j, a, b)});
        }
    } else {
      for (int a = 0; a < n_; ++a) {
        std::vector<int> exist;
        for (int i = 0; i < c_; ++i) exist.push_back(-C(i, a));
        clause(exist);
        for (int i = 0; i < c_; ++i)
          for (int j = i + 1; j < c_; ++j) clause({C(i, a), C(j, a)});
      }
    }
  }

  void symmetry_breaking() {
    for (int b = 1; b < n_; ++b)
      for (int cc = b + 1; cc < n_; ++cc) clause({L(0, b, cc)});
  }

  std::vector<int> potential_interior(int a, int b, int cc) {
    std::vector<int> p;
    for (int z = a + 1; z < cc; ++z)
      if (z != b) p.push_back(z);
    return p;
  }

  int EXT(int a, int b, int cc, int z) {
    int before = f_.registry.var_count();
    int v = f_.registry.ensure(var_kind::EXT, {a, b, cc, z});
    if (f_.registry.var_count() == before) return v;  // already defined
    if (z < b) {
      // exterior when sign(a,z,b) == sign(a,z,c)
      clause({-L(a, z, b), -L(a, z, cc), v});
      clause({L(a, z, b), L(a, z, cc), v});
    } else {
      clause({-L(b, z, cc), -L(a, z, cc), v});
      clause({L(b, z, cc), L(a, z, cc), v});
    }
    return v;
  }

  int INQ(int a, int b, int cc, int z) {
    int before = f_.registry.var_count();
    int v = f_.registry.ensure(var_kind::INQ, {a, b, cc, z});
    if (f_.registry.var_count() == before) return v;
    if (z < b) {
      clause({-L(a, z, b), L(a, z, cc), v});
      clause({L(a, z, b), -L(a, z, cc), v});
    } else {
      clause({-L(b, z, cc), L(a, z, cc), v});
      clause({L(b, z, cc), -L(a, z, cc), v});
    }
    return v;
  }

  // TR(a,b,c,q): at most q interior points in triangle abc
  int TR(int a, int b, int cc, int q) {
    int before = f_.registry.var_count();
    int v = f_.registry.ensure(var_kind::TR, {a, b, cc, q});
    if (f_.registry.var_count() == before) return v;
    auto pool = potential_interior(a, b, cc);
    int p = static_cast<int>(pool.size());
    if (q >= p) {
      clause({v});
      return v;
    }
    std::vector<int> exts;
    for (int z : pool) exts.push_back(EXT(a, b, cc, z));
    unsigned long long expansion =
        binom(p, p - q) * static_cast<unsigned long long>(p - q + 1);
    if (expansion <= opt_.tr_expansion_budget) {
      for_subsets_of(exts, p - q, [&](const std::vector<int>& zs) {
        std::vector<int> cl;
        cl.reserve(zs.size() + 1);
        for (int e : zs) cl.push_back(-e);
        cl.push_back(v);
        clause(cl);
      });
    } else {
      // counter fallback: at least p-q exterior points imply TR
      auto outs = add_totalizer(f_, exts);
      clause({-outs[p - q - 1], v});
    }
    return v;
  }

  // at least k interior points in the union of the given triangles (the
  // disjoint cells of one region); region_key must identify both the vertex
  // set and the case whose fan produced `tris`
  int AL(const std::vector<int>& region_key, const std::vector<std::array<int, 3>>& tris,
         int zmin, int zmax, const std::vector<int>& skip, int k) {
    std::vector<int> key = region_key;
    key.push_back(k);
    while (key.size() < 8) key.push_back(-1);
    int before = f_.registry.var_count();
    int v = f_.registry.ensure(var_kind::AL, {key[0], key[1], key[2], key[3], key[4], key[5],
                                              key[6], key[7]});
    if (f_.registry.var_count() == before) return v;
    // union membership indicators
    std::vector<int> members;
    for (int z = zmin + 1; z < zmax; ++z) {
      if (std::find(skip.begin(), skip.end(), z) != skip.end()) continue;
      std::vector<int> cover;
      for (const auto& t : tris)
        if (t[0] < z && z < t[2] && z != t[1]) cover.push_back(INQ(t[0], t[1], t[2], z));
      if (cover.empty()) continue;
      int u;
      if (cover.size() == 1) {
        u = cover[0];
      } else {
        std::vector<int> ukey = region_key;
        ukey.push_back(z);
        while (ukey.size() < 8) ukey.push_back(-1);
        int b2 = f_.registry.var_count();
        u = f_.registry.ensure(var_kind::INQ, {ukey[0], ukey[1], ukey[2], ukey[3], ukey[4],
                                               ukey[5], ukey[6], ukey[7]});
        if (f_.registry.var_count() != b2)
          for (int cv : cover) clause({-cv, u});
      }
      members.push_back(u);
    }
    if (static_cast<int>(members.size()) < k) {
      // fewer candidates than k: "at least k" can never be forced; leave the
      // indicator free negative by giving it no support
      return v;
    }
    unsigned long long expansion = binom(static_cast<int>(members.size()), k);
    if (expansion * (k + 1) <= opt_.tr_expansion_budget) {
      for_subsets_of(members, k, [&](const std::vector<int>& zs) {
        std::vector<int> cl;
        for (int m : zs) cl.push_back(-m);
        cl.push_back(v);
        clause(cl);
      });
    } else {
      auto outs = add_totalizer(f_, members);
      clause({-outs[k - 1], v});
    }
    return v;
  }

  std::vector<int> point_guard(const std::vector<int>& v, int color) {
    std::vector<int> g;
    if (c_ > 1)
      for (int i : v) g.push_back(C(color, i));
    return g;
  }

  std::vector<int> edge_guard_cycle(const std::vector<int>& v, const std::vector<int>& cycle,
                                    int color) {
    std::vector<int> g;
    for (size_t i = 0; i < cycle.size(); ++i) {
      int a = v[cycle[i]], b = v[cycle[(i + 1) % cycle.size()]];
      if (a > b) std::swap(a, b);
      g.push_back(EC(color, a, b));
    }
    return g;
  }

  // negated case conditions relative to orientation r
  std::vector<int> case_guard(const std::vector<int>& v, const convex_case& cs, int r) {
    std::vector<int> g;
    for (const auto& cond : cs.conds)
      g.push_back(-lit_L(v[cond.i], v[cond.j], v[cond.k], cond.rel * r));
    return g;
  }

  void prohibit(const constraint& ct) {
    switch (ct.kind) {
      case structure_kind::pair_: {
        for_increasing_tuples(n_, 2, [&](const std::vector<int>& v) {
          clause(point_guard(v, ct.color));
        });
        break;
      }
      case structure_kind::triangle: {
        for_increasing_tuples(n_, 3, [&](const std::vector<int>& v) {
          std::vector<int> cl = point_guard(v, ct.color);
          if (ct.limit != no_limit) cl.push_back(-TR(v[0], v[1], v[2], ct.limit));
          clause(cl);
        });
        break;
      }
      case structure_kind::convex4:
      case structure_kind::convex5: {
        const auto& cases =
            ct.kind == structure_kind::convex4 ? convex4_cases() : convex5_cases();
        int k = ct.kind == structure_kind::convex4 ? 4 : 5;
        for_increasing_tuples(n_, k, [&](const std::vector<int>& v) {
          auto guard = point_guard(v, ct.color);
          emit_convex_prohibitions(v, cases, guard, ct.limit);
        });
        break;
      }
      case structure_kind::nonconvex4: {
        for_increasing_tuples(n_, 4, [&](const std::vector<int>& v) {
          auto guard = point_guard(v, ct.color);
          emit_convex_prohibitions(v, convex4_cases(), guard, ct.limit);
          emit_nonconvex_prohibitions(v, guard, ct.limit);
        });
        break;
      }
      case structure_kind::island4: {
        for_increasing_tuples(n_, 4, [&](const std::vector<int>& v) {
          auto guard = point_guard(v, ct.color);
          emit_convex_prohibitions(v, convex4_cases(), guard, ct.limit);
          for (const auto& g : nonconvex4_cases()) {
            for (int r = -1; r <= 1; r += 2) {
              std::vector<int> cl = guard;
              for (const auto& cond : g.conds)
                cl.push_back(-lit_L(v[cond.i], v[cond.j], v[cond.k], cond.rel * r));
              if (ct.limit != no_limit)
                cl.push_back(-TR(v[g.outer[0]], v[g.outer[1]], v[g.outer[2]], ct.limit + 1));
              clause(cl);
            }
          }
        });
        break;
      }
      case structure_kind::hexagon: {
        for_increasing_tuples(n_, 6, [&](const std::vector<int>& v) {
          auto guard = point_guard(v, ct.color);
          for (const auto& hc : hexagon_cases()) {
            for (int r = -1; r <= 1; r += 2) {
              std::vector<int> base = guard;
              auto cg = case_guard(v, hc, r);
              base.insert(base.end(), cg.begin(), cg.end());
              if (ct.limit == no_limit) {
                clause(base);
                continue;
              }
              if (spec_.hexagon_relaxation == hex_mode::base_triangle) {
                std::vector<int> cl = base;
                cl.push_back(-TR(v[hc.base[0]], v[hc.base[1]], v[hc.base[2]], ct.limit));
                clause(cl);
              } else {
                for_splits(ct.limit, 4, [&](const std::vector<int>& qs) {
                  std::vector<int> cl = base;
                  for (int t = 0; t < 4; ++t)
                    cl.push_back(-TR(v[hc.fan[t][0]], v[hc.fan[t][1]], v[hc.fan[t][2]], qs[t]));
                  clause(cl);
                });
              }
            }
          }
        });
        break;
      }
      case structure_kind::hex_ex: {
        for_increasing_tuples(n_, 6, [&](const std::vector<int>& v) {
          auto guard = point_guard(v, ct.color);
          const auto& cases = hexagon_cases();
          for (size_t ci = 0; ci < cases.size(); ++ci) {
            const auto& hc = cases[ci];
            for (int r = -1; r <= 1; r += 2) {
              std::vector<int> base = guard;
              auto cg = case_guard(v, hc, r);
              base.insert(base.end(), cg.begin(), cg.end());
              for (int k : ct.interior_set) {
                if (spec_.hexagon_relaxation == hex_mode::base_triangle) {
                  int ta = v[hc.base[0]], tb = v[hc.base[1]], tc = v[hc.base[2]];
                  std::vector<int> cl = base;
                  cl.push_back(-TR(ta, tb, tc, k));
                  if (k > 0)
                    cl.push_back(-AL({ta, tb, tc}, {{{ta, tb, tc}}}, ta, tc, {tb}, k));
                  clause(cl);
                } else {
                  std::vector<std::array<int, 3>> fan;
                  for (const auto& t : hc.fan) fan.push_back({v[t[0]], v[t[1]], v[t[2]]});
                  std::vector<int> skip(v.begin(), v.end());
                  std::vector<int> region(v.begin(), v.end());
                  region.push_back(static_cast<int>(ci));
                  for_splits(k, 4, [&](const std::vector<int>& qs) {
                    std::vector<int> cl = base;
                    for (int t = 0; t < 4; ++t)
                      cl.push_back(-TR(fan[t][0], fan[t][1], fan[t][2], qs[t]));
                    if (k > 0)
                      cl.push_back(-AL(region, fan, v.front(), v.back(), skip, k));
                    clause(cl);
                  });
                }
              }
            }
          }
        });
        break;
      }
      case structure_kind::hex_sub: {
        int q = ct.interior_set.back();
        for_increasing_tuples(n_, 6, [&](const std::vector<int>& v) {
          auto guard = point_guard(v, ct.color);
          for (const auto& hc : hexagon_cases()) {
            for (int r = -1; r <= 1; r += 2) {
              std::vector<int> base = guard;
              auto cg = case_guard(v, hc, r);
              base.insert(base.end(), cg.begin(), cg.end());
              for (int opp = 0; opp < 3; ++opp) {
                std::vector<int> quad;
                for (int i = 0; i < 6; ++i)
                  if (i != opp && i != opp + 3) quad.push_back(v[hc.cycle[i]]);
                std::sort(quad.begin(), quad.end());
                const auto& qcases = convex4_cases();
                for (size_t qci = 0; qci < qcases.size(); ++qci) {
                  const auto& qc = qcases[qci];
                  for (int qr = -1; qr <= 1; qr += 2) {
                    std::vector<int> qbase = base;
                    auto qg = case_guard(quad, qc, qr);
                    qbase.insert(qbase.end(), qg.begin(), qg.end());
                    std::array<std::array<int, 3>, 2> tris{};
                    for (int t = 0; t < 2; ++t)
                      tris[t] = {quad[qc.fan[t][0]], quad[qc.fan[t][1]], quad[qc.fan[t][2]]};
                    std::vector<int> region = quad;
                    region.push_back(static_cast<int>(qci));
                    for (int kk : ct.interior_set) {
                      for_splits(kk, 2, [&](const std::vector<int>& qs) {
                        std::vector<int> cl = qbase;
                        for (int t = 0; t < 2; ++t)
                          cl.push_back(-TR(tris[t][0], tris[t][1], tris[t][2], qs[t]));
                        if (kk > 0) {
                          std::vector<std::array<int, 3>> fan(tris.begin(), tris.end());
                          cl.push_back(-AL(region, fan, quad.front(), quad.back(), quad, kk));
                        }
                        clause(cl);
                      });
                    }
                  }
                }
              }
            }
          }
        });
        break;
      }
      case structure_kind::ramsey_triangle: {
        for_increasing_tuples(n_, 3, [&](const std::vector<int>& v) {
          std::vector<int> cl = edge_guard_cycle(v, {0, 1, 2}, ct.color);
          if (ct.limit != no_limit) cl.push_back(-TR(v[0], v[1], v[2], ct.limit));
          clause(cl);
        });
        break;
      }
      case structure_kind::ramsey_convex4:
      case structure_kind::ramsey_convex5: {
        const auto& cases =
            ct.kind == structure_kind::ramsey_convex4 ? convex4_cases() : convex5_cases();
        int k = ct.kind == structure_kind::ramsey_convex4 ? 4 : 5;
        for_increasing_tuples(n_, k, [&](const std::vector<int>& v) {
          for (const auto& cs : cases) {
            for (int r = -1; r <= 1; r += 2) {
              std::vector<int> cl = edge_guard_cycle(v, cs.cycle, ct.color);
              auto cg = case_guard(v, cs, r);
              cl.insert(cl.end(), cg.begin(), cg.end());
              if (ct.limit != no_limit) {
                for_splits(ct.limit, static_cast<int>(cs.fan.size()),
                           [&](const std::vector<int>& qs) {
                             std::vector<int> full = cl;
                             for (size_t t = 0; t < cs.fan.size(); ++t)
                               full.push_back(-TR(v[cs.fan[t][0]], v[cs.fan[t][1]],
                                                  v[cs.fan[t][2]], qs[t]));
                             clause(full);
                           });
              } else {
                clause(cl);
              }
            }
          }
        });
        break;
      }
    }
  }

  void emit_convex_prohibitions(const std::vector<int>& v, const std::vector<convex_case>& cases,
                                const std::vector<int>& guard, int limit) {
    for (const auto& cs : cases) {
      for (int r = -1; r <= 1; r += 2) {
        std::vector<int> base = guard;
        auto cg = case_guard(v, cs, r);
        base.insert(base.end(), cg.begin(), cg.end());
        if (limit == no_limit) {
          clause(base);
          continue;
        }
        for_splits(limit, static_cast<int>(cs.fan.size()), [&](const std::vector<int>& qs) {
          std::vector<int> cl = base;
          for (size_t t = 0; t < cs.fan.size(); ++t)
            cl.push_back(-TR(v[cs.fan[t][0]], v[cs.fan[t][1]], v[cs.fan[t][2]], qs[t]));
          clause(cl);
        });
      }
    }
  }

  void emit_nonconvex_prohibitions(const std::vector<int>& v, const std::vector<int>& guard,
                                   int limit) {
    for (const auto& g : nonconvex4_cases()) {
      for (int r = -1; r <= 1; r += 2) {
        std::vector<int> base = guard;
        for (const auto& cond : g.conds)
          base.push_back(-lit_L(v[cond.i], v[cond.j], v[cond.k], cond.rel * r));
        // one clause family per pair of inner-fan cells
        for (int t1 = 0; t1 < 3; ++t1)
          for (int t2 = t1 + 1; t2 < 3; ++t2) {
            if (limit == no_limit) {
              clause(base);
              continue;
            }
            for_splits(limit, 2, [&](const std::vector<int>& qs) {
              std::vector<int> cl = base;
              const auto& a = g.subtris[t1];
              const auto& b = g.subtris[t2];
              cl.push_back(-TR(v[a[0]], v[a[1]], v[a[2]], qs[0]));
              cl.push_back(-TR(v[b[0]], v[b[1]], v[b[2]], qs[1]));
              clause(cl);
            });
          }
      }
    }
  }
};

}  // namespace

cnf_formula build_cnf(const problem_spec& spec, const encode_options& opt) {
  cnf_builder b(spec, opt);
  return b.build();
}

cnf_formula build_axioms(int n, bool symmetry_breaking) {
  problem_spec spec;
  spec.n = n;
  spec.symmetry_breaking = symmetry_breaking;
  return build_cnf(spec);
}

hybrid_formula build_linear(const problem_spec& spec, const abscissa_grid& grid,
                            const encode_options& opt) {
  if (grid.n() != spec.n)
    throw grid_mismatch_error("grid has " + std::to_string(grid.n()) + " abscissae for n=" +
                              std::to_string(spec.n));
  problem_spec s = spec;
  s.symmetry_breaking = false;  // fixed abscissae are not symmetry-invariant
  hybrid_formula h;
  h.cnf = build_cnf(s, opt);
  h.grid = grid;
  for (int a = 0; a < s.n; ++a)
    for (int b = a + 1; b < s.n; ++b)
      for (int c = b + 1; c < s.n; ++c) {
        int lv = h.cnf.registry.lookup(var_kind::L, {a, b, c});
        guarded_inequality pos{lv,
                               {a, b, c},
                               {grid.xs[c] - grid.xs[b], grid.xs[a] - grid.xs[c],
                                grid.xs[b] - grid.xs[a]},
                               +1};
        guarded_inequality neg{-lv, pos.ys, pos.coef, -1};
        h.links.push_back(pos);
        h.links.push_back(neg);
      }
  return h;
}

namespace {

std::string smt_symbol(const var_registry& reg, int v) {
  std::string d = reg.describe(v);
  for (char& ch : d) {
    if (ch == '(' || ch == ',' ) ch = '_';
    if (ch == ')') ch = '\0';
  }
  std::string out;
  for (char ch : d)
    if (ch != '\0') out.push_back(ch);
  return out;
}

std::string smt_int(const bigint& v) {
  if (v < 0) return "(- " + bigint(-v).get_str() + ")";
  return v.get_str();
}

}  // namespace

std::string emit_smt2(const problem_spec& spec, const abscissa_grid& grid,
                      const encode_options& opt) {
  hybrid_formula h = build_linear(spec, grid, opt);
  std::ostringstream os;
  os << "(set-logic QF_LIA)\n";
  for (int i = 0; i < spec.n; ++i)
    os << "(define-fun x" << i << " () Int " << smt_int(grid.xs[i]) << ")\n";
  for (int i = 0; i < spec.n; ++i) os << "(declare-const y" << i << " Int)\n";
  const auto& reg = h.cnf.registry;
  for (int v = 1; v <= reg.var_count(); ++v)
    os << "(declare-const " << smt_symbol(reg, v) << " Bool)\n";
  for (int v = reg.var_count() + 1; v <= h.cnf.var_count; ++v)
    os << "(declare-const b" << v << " Bool)\n";
  auto lit_str = [&](int lit) {
    int v = std::abs(lit);
    std::string name = v <= reg.var_count() ? smt_symbol(reg, v) : "b" + std::to_string(v);
    return lit > 0 ? name : "(not " + name + ")";
  };
  for (const auto& cl : h.cnf.clauses) {
    if (cl.size() == 1) {
      os << "(assert " << lit_str(cl[0]) << ")\n";
    } else {
      os << "(assert (or";
      for (int l : cl) os << " " << lit_str(l);
      os << "))\n";
    }
  }
  for (const auto& link : h.links) {
    os << "(assert (=> " << lit_str(link.lit) << " (" << (link.dir > 0 ? ">=" : "<=") << " (+";
    for (int t = 0; t < 3; ++t)
      os << " (* " << smt_int(link.coef[t]) << " y" << link.ys[t] << ")";
    os << ") " << (link.dir > 0 ? "1" : "(- 1)") << ")))\n";
  }
  os << "(check-sat)\n(get-value (";
  for (int i = 0; i < spec.n; ++i) os << "x" << i << " y" << i << (i + 1 < spec.n ? " " : "");
  int c = spec.num_colors();
  if (c > 1 && !spec.edge_colored())
    for (int i = 0; i < c; ++i)
      for (int a = 0; a < spec.n; ++a)
        os << " " << smt_symbol(reg, reg.lookup(var_kind::C, {i, a}));
  os << "))\n";
  return os.str();
}

// --- decomposition ----------------------------------------------------------

namespace {

bool violates_rules(const std::vector<int>& prefix, const std::vector<run_rule>& rules) {
  for (const auto& r : rules) {
    int run = 0;
    int prev = -2;
    for (int col : prefix) {
      bool counts = (r.color < 0 || col == r.color);
      if (counts && col == prev) {
        ++run;
      } else if (counts) {
        run = 1;
      } else {
        run = 0;
      }
      prev = counts ? col : -2;
      if (run > r.max_run) return true;
    }
  }
  return false;
}

}  // namespace

decomposition decompose(const problem_spec& spec, int prefix_len,
                        const std::vector<run_rule>& rules) {
  if (spec.edge_colored()) throw spec_invalid_error("decomposition needs point coloring");
  if (prefix_len < 0 || prefix_len > spec.n)
    throw spec_invalid_error("prefix length out of range");
  const int c = spec.num_colors();

  // interchangeable color classes: same multiset of constraints
  std::map<std::vector<std::string>, std::vector<int>> sig_groups;
  for (int i = 0; i < c; ++i) {
    std::vector<std::string> sig;
    for (const auto& ct : spec.constraints)
      if (ct.color == i) {
        std::ostringstream os;
        os << kind_name(ct.kind) << ":" << ct.limit << ":";
        for (int q : ct.interior_set) os << q << ",";
        sig.push_back(os.str());
      }
    std::sort(sig.begin(), sig.end());
    sig_groups[sig].push_back(i);
  }

  decomposition d;
  d.prefix_len = prefix_len;
  d.rules = rules;
  for (auto& [sig, group] : sig_groups) d.color_groups.push_back(group);
  std::sort(d.color_groups.begin(), d.color_groups.end());

  // group index and rank-within-group per color
  std::vector<int> group_of(c), rank_in_group(c);
  for (size_t g = 0; g < d.color_groups.size(); ++g)
    for (size_t r = 0; r < d.color_groups[g].size(); ++r) {
      group_of[d.color_groups[g][r]] = static_cast<int>(g);
      rank_in_group[d.color_groups[g][r]] = static_cast<int>(r);
    }

  std::vector<int> prefix;
  std::vector<int> used_in_group(d.color_groups.size(), 0);
  int next_id = 0;

  // memoized count of canonical extensions below a pruned partial prefix
  std::map<std::pair<int, std::vector<int>>, long> memo;
  std::function<long(int)> count_ext = [&](int remaining) -> long {
    if (remaining == 0) return 1;
    auto key = std::make_pair(remaining, used_in_group);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    long total = 0;
    for (int col = 0; col < c; ++col) {
      if (rank_in_group[col] > used_in_group[group_of[col]]) continue;
      bool fresh = rank_in_group[col] == used_in_group[group_of[col]];
      if (fresh) ++used_in_group[group_of[col]];
      total += count_ext(remaining - 1);
      if (fresh) --used_in_group[group_of[col]];
    }
    memo[key] = total;
    return total;
  };

  std::function<void()> rec = [&]() {
    if (static_cast<int>(prefix.size()) == prefix_len) {
      d.subproblems.push_back({next_id++, prefix, false});
      return;
    }
    for (int col = 0; col < c; ++col) {
      // canonical: inside each interchangeable class, colors appear in
      // first-occurrence order
      if (rank_in_group[col] > used_in_group[group_of[col]]) continue;
      bool fresh = rank_in_group[col] == used_in_group[group_of[col]];
      prefix.push_back(col);
      if (fresh) ++used_in_group[group_of[col]];
      if (violates_rules(prefix, rules)) {
        d.pruned += count_ext(prefix_len - static_cast<int>(prefix.size()));
      } else {
        rec();
      }
      if (fresh) --used_in_group[group_of[col]];
      prefix.pop_back();
    }
  };
  rec();
  if (d.pruned > 0) d.subproblems.push_back({next_id++, {}, true});
  return d;
}

void apply_subproblem(cnf_formula& f, const problem_spec& spec, const decomposition& d,
                      const subproblem& sub) {
  const int c = spec.num_colors();
  if (c <= 1) return;
  auto cvar = [&](int color, int a) {
    int v = f.registry.lookup(var_kind::C, {color, a});
    if (v == 0) throw spec_invalid_error("formula lacks color variables");
    return v;
  };
  if (!sub.residual) {
    for (size_t a = 0; a < sub.prefix_colors.size(); ++a)
      f.add_clause({-cvar(sub.prefix_colors[a], static_cast<int>(a))});
    return;
  }
  // canonicity over the prefix: inside each interchangeable class, the j-th
  // color may appear at position p only after the (j-1)-th appeared earlier
  for (const auto& group : d.color_groups) {
    for (size_t j = 1; j < group.size(); ++j) {
      for (int p = 0; p < d.prefix_len; ++p) {
        std::vector<int> cl{cvar(group[j], p)};
        for (int p2 = 0; p2 < p; ++p2) cl.push_back(-cvar(group[j - 1], p2));
        f.add_clause(cl);
      }
    }
  }
  // block every live prefix: residual models are the rule-pruned ones
  for (const auto& s : d.subproblems) {
    if (s.residual) continue;
    std::vector<int> cl;
    for (size_t a = 0; a < s.prefix_colors.size(); ++a)
      cl.push_back(cvar(s.prefix_colors[a], static_cast<int>(a)));
    f.add_clause(cl);
  }
}

// --- cardinality ------------------------------------------------------------

std::vector<int> add_totalizer(cnf_formula& f, const std::vector<int>& inputs) {
  if (inputs.empty()) return {};
  std::function<std::vector<int>(int, int)> build = [&](int lo, int hi) -> std::vector<int> {
    if (hi - lo == 1) return {inputs[lo]};
    int mid = (lo + hi) / 2;
    auto A = build(lo, mid);
    auto B = build(mid, hi);
    int p = static_cast<int>(A.size()), q = static_cast<int>(B.size());
    std::vector<int> out(p + q);
    for (int k = 0; k < p + q; ++k) out[k] = f.fresh_var();
    f.sync_var_count();
    for (int i = 0; i <= p; ++i)
      for (int j = 0; j <= q; ++j) {
        if (i + j >= 1) {
          // A>=i and B>=j imply out>=i+j
          std::vector<int> cl;
          if (i > 0) cl.push_back(-A[i - 1]);
          if (j > 0) cl.push_back(-B[j - 1]);
          cl.push_back(out[i + j - 1]);
          f.add_clause(cl);
        }
        if (i + j < p + q) {
          // out>=i+j+1 implies A>=i+1 or B>=j+1
          std::vector<int> cl{-out[i + j]};
          if (i < p) cl.push_back(A[i]);
          if (j < q) cl.push_back(B[j]);
          f.add_clause(cl);
        }
      }
    return out;
  };
  return build(0, static_cast<int>(inputs.size()));
}

namespace {

// bidirectional interior indicator (needed for exact counting); the -3
// sentinel keeps it apart from the one-directional encoder indicators
int count_inq(cnf_formula& f, int a, int b, int c, int z) {
  int before = f.registry.var_count();
  int v = f.registry.ensure(var_kind::INQ, {a, b, c, z, -3});
  bool fresh = f.registry.var_count() != before;
  f.sync_var_count();
  auto L = [&](int x, int y, int w) { return f.registry.lookup(var_kind::L, {x, y, w}); };
  if (fresh) {
    int l1 = z < b ? L(a, z, b) : L(b, z, c);
    int l2 = L(a, z, c);
    // v <-> (l1 xor l2)
    f.add_clause({-l1, l2, v});
    f.add_clause({l1, -l2, v});
    f.add_clause({-l1, -l2, -v});
    f.add_clause({l1, l2, -v});
  }
  return v;
}

// ne(a,b,c) <-> some point is interior
int count_ne(cnf_formula& f, int n, int a, int b, int c) {
  int before = f.registry.var_count();
  int v = f.registry.ensure(var_kind::AL, {a, b, c, -2, -1, -1, -1});
  bool fresh = f.registry.var_count() != before;
  f.sync_var_count();
  if (fresh) {
    std::vector<int> any{-v};
    for (int z = a + 1; z < c; ++z) {
      if (z == b) continue;
      int in = count_inq(f, a, b, c, z);
      f.add_clause({-in, v});
      any.push_back(in);
    }
    f.add_clause(any);
  }
  return v;
}

int and_indicator(cnf_formula& f, const std::vector<int>& lits) {
  int v = f.fresh_var();
  f.sync_var_count();
  std::vector<int> back{v};
  for (int l : lits) {
    f.add_clause({-v, l});
    back.push_back(-l);
  }
  f.add_clause(back);
  return v;
}

}  // namespace

void add_cardinality(cnf_formula& f, int n, count_kind kind, int bound, count_dir dir,
                     const encode_options& opt) {
  (void)opt;
  std::vector<int> indicators;
  auto L = [&](int x, int y, int w) { return f.registry.lookup(var_kind::L, {x, y, w}); };
  if (kind == count_kind::empty_triangle) {
    for_increasing_tuples(n, 3, [&](const std::vector<int>& v) {
      indicators.push_back(-count_ne(f, n, v[0], v[1], v[2]));
    });
  } else {
    const auto& cases =
        kind == count_kind::empty_convex4 ? convex4_cases() : convex5_cases();
    int k = kind == count_kind::empty_convex4 ? 4 : 5;
    for_increasing_tuples(n, k, [&](const std::vector<int>& v) {
      std::vector<int> case_inds;
      for (const auto& cs : cases) {
        for (int r = -1; r <= 1; r += 2) {
          std::vector<int> conj;
          for (const auto& cond : cs.conds)
            conj.push_back(cond.rel * r > 0 ? L(v[cond.i], v[cond.j], v[cond.k])
                                            : -L(v[cond.i], v[cond.j], v[cond.k]));
          for (const auto& t : cs.fan)
            conj.push_back(-count_ne(f, n, v[t[0]], v[t[1]], v[t[2]]));
          case_inds.push_back(and_indicator(f, conj));
        }
      }
      // subset indicator: true iff one of the mutually exclusive cases holds
      int ind = f.fresh_var();
      f.sync_var_count();
      std::vector<int> any{-ind};
      for (int ci : case_inds) {
        f.add_clause({-ci, ind});
        any.push_back(ci);
      }
      f.add_clause(any);
      indicators.push_back(ind);
    });
  }
  auto outs = add_totalizer(f, indicators);
  int m = static_cast<int>(outs.size());
  if (dir == count_dir::at_most) {
    if (bound < m) f.add_clause({-outs[bound]});
  } else {
    if (bound + 1 <= m) {
      f.add_clause({outs[bound]});
    } else {
      int v = f.fresh_var();
      f.sync_var_count();
      f.add_clause({v});
      f.add_clause({-v});
    }
  }
  f.sync_var_count();
}

// --- model bridges ----------------------------------------------------------

std::vector<int> l_variables(const cnf_formula& f, int n) {
  std::vector<int> vs;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        int v = f.registry.lookup(var_kind::L, {a, b, c});
        if (v == 0) throw spec_invalid_error("formula lacks L variables");
        vs.push_back(v);
      }
  return vs;
}

std::vector<int> color_priority_vars(const cnf_formula& f) {
  std::vector<int> vs;
  for (int v = 1; v <= f.registry.var_count(); ++v) {
    var_kind k = f.registry.name(v).kind;
    if (k == var_kind::C || k == var_kind::EC) vs.push_back(v);
  }
  return vs;
}

signotope signotope_from_model(const cnf_formula& f, const std::vector<bool>& model, int n) {
  signotope s(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        int v = f.registry.lookup(var_kind::L, {a, b, c});
        s.set_sign(a, b, c, model[v] ? +1 : -1);
      }
  return s;
}

std::vector<int> point_colors_from_model(const cnf_formula& f, const std::vector<bool>& model,
                                         int n, int num_colors) {
  std::vector<int> colors(n, 0);
  if (num_colors <= 1) return colors;
  for (int a = 0; a < n; ++a) {
    int chosen = -1;
    for (int i = 0; i < num_colors; ++i) {
      int v = f.registry.lookup(var_kind::C, {i, a});
      if (v != 0 && !model[v]) {  // inverse logic: false = colored i
        chosen = i;
        break;
      }
    }
    if (chosen < 0) throw std::logic_error("model assigns no color to point " + std::to_string(a));
    colors[a] = chosen;
  }
  return colors;
}

edge_coloring edge_colors_from_model(const cnf_formula& f, const std::vector<bool>& model, int n,
                                     int num_colors) {
  edge_coloring ec(n);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      int chosen = -1;
      for (int i = 0; i < num_colors; ++i) {
        int v = f.registry.lookup(var_kind::EC, {i, a, b});
        if (v != 0 && !model[v]) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) throw std::logic_error("model assigns no color to an edge");
      ec.set(a, b, chosen);
    }
  return ec;
}

}  // namespace esk
