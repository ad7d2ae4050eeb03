#include "esk/geometry.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "esk/errors.hpp"

namespace esk {

bool operator<(const forbidden_structure& a, const forbidden_structure& b) {
  if (a.kind != b.kind) return a.kind < b.kind;
  if (a.vertices != b.vertices) return a.vertices < b.vertices;
  if (a.color != b.color) return a.color < b.color;
  return a.interior_count < b.interior_count;
}

bool point_set::x_sorted() const {
  for (size_t i = 1; i < pts.size(); ++i)
    if (pts[i - 1].x >= pts[i].x) return false;
  return true;
}

int orient(const point& p, const point& q, const point& r) {
  // sign of (q.x-p.x)(r.y-p.y) - (r.x-p.x)(q.y-p.y)
  bigint d = (q.x - p.x) * (r.y - p.y) - (r.x - p.x) * (q.y - p.y);
  return sign_of(d);
}

point_set relabel_with_perm(const point_set& ps, std::vector<int>* perm_out) {
  const int n = ps.n();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int a, int b) {
    if (ps[a].x != ps[b].x) return ps[a].x < ps[b].x;
    return ps[a].y < ps[b].y;
  });

  bool dup_x = false;
  for (int i = 1; i < n; ++i) {
    if (ps[perm[i - 1]].x == ps[perm[i]].x) {
      if (ps[perm[i - 1]].y == ps[perm[i]].y)
        throw collinear_error(perm[i - 1], perm[i], perm[i]);
      dup_x = true;
    }
  }

  point_set out;
  out.pts.reserve(n);
  if (!dup_x) {
    for (int i = 0; i < n; ++i) out.pts.push_back(ps[perm[i]]);
  } else {
    // Shear (x,y) -> (K*x + y, y) with K exceeding every |y| gap: an
    // orientation-preserving affine map that makes x coordinates follow
    // the (x,y)-lexicographic order strictly.
    bigint maxy = 0;
    for (const auto& p : ps.pts) {
      bigint a = abs(p.y);
      if (a > maxy) maxy = a;
    }
    bigint K = 2 * maxy + 1;
    for (int i = 0; i < n; ++i) {
      point p = ps[perm[i]];
      p.x = K * p.x + p.y;
      out.pts.push_back(std::move(p));
    }
  }
  for (int i = 1; i < n; ++i)
    if (out[i - 1].x >= out[i].x)
      throw collinear_error(perm[i - 1], perm[i], perm[i]);
  if (perm_out) *perm_out = std::move(perm);
  return out;
}

point_set relabel(const point_set& ps) {
  auto out = relabel_with_perm(ps, nullptr);
  // full general-position check is part of the contract
  for (int c = 2; c < out.n(); ++c)
    for (int b = 1; b < c; ++b)
      for (int a = 0; a < b; ++a)
        if (orient(out[a], out[b], out[c]) == 0) throw collinear_error(a, b, c);
  return out;
}

namespace {

// Precomputed orientation signs for all sorted triples of a canonical set.
class sign_table {
 public:
  explicit sign_table(const point_set& ps) : n_(ps.n()) {
    signs_.assign(n_ < 3 ? 0 : rank3_static(n_ - 3, n_ - 2, n_ - 1) + 1, 0);
    for (int c = 2; c < n_; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a) {
          int s = orient(ps[a], ps[b], ps[c]);
          if (s == 0) throw collinear_error(a, b, c);
          signs_[rank3(a, b, c)] = static_cast<int8_t>(s);
        }
  }

  int n() const { return n_; }

  // a < b < c required
  int sign(int a, int b, int c) const { return signs_[rank3(a, b, c)]; }

  // any distinct indices
  int sign_any(int a, int b, int c) const {
    int parity = 1;
    if (a > b) { std::swap(a, b); parity = -parity; }
    if (b > c) { std::swap(b, c); parity = -parity; }
    if (a > b) { std::swap(a, b); parity = -parity; }
    return parity * sign(a, b, c);
  }

 private:
  static size_t rank3_static(int a, int b, int c) {
    return static_cast<size_t>(c) * (c - 1) * (c - 2) / 6 + static_cast<size_t>(b) * (b - 1) / 2 +
           static_cast<size_t>(a);
  }
  size_t rank3(int a, int b, int c) const { return rank3_static(a, b, c); }

  int n_;
  std::vector<int8_t> signs_;
};

bool inside_triangle(const sign_table& st, int a, int b, int c, int z) {
  if (z == a || z == b || z == c) return false;
  int s1 = st.sign_any(a, b, z);
  int s2 = st.sign_any(b, c, z);
  int s3 = st.sign_any(c, a, z);
  return s1 == s2 && s2 == s3;
}

// Cup/cap decomposition of an x-sorted index subset. On success fills the
// hull cycle (starting at v.front(), lower chain first) and returns true.
bool convex_cycle(const sign_table& st, const std::vector<int>& v, std::vector<int>* cycle) {
  const int k = static_cast<int>(v.size());
  std::vector<int> lower{v[0]}, upper;
  for (int i = 1; i + 1 < k; ++i) {
    // orient(v0, vi, vlast) = +1 puts vi below the chord v0 -> vlast
    (st.sign(v[0], v[i], v[k - 1]) > 0 ? lower : upper).push_back(v[i]);
  }
  lower.push_back(v[k - 1]);
  for (size_t i = 0; i + 2 < lower.size(); ++i)
    if (st.sign(lower[i], lower[i + 1], lower[i + 2]) != +1) return false;
  if (!upper.empty()) {
    std::vector<int> chain{v[0]};
    chain.insert(chain.end(), upper.begin(), upper.end());
    chain.push_back(v[k - 1]);
    for (size_t i = 0; i + 2 < chain.size(); ++i)
      if (st.sign(chain[i], chain[i + 1], chain[i + 2]) != -1) return false;
  }
  if (cycle) {
    cycle->clear();
    cycle->insert(cycle->end(), lower.begin(), lower.end());
    cycle->insert(cycle->end(), upper.rbegin(), upper.rend());
  }
  return true;
}

bool inside_convex_cycle(const sign_table& st, const std::vector<int>& cycle, int z) {
  const int k = static_cast<int>(cycle.size());
  for (int i = 0; i < k; ++i)
    if (z == cycle[i]) return false;
  int want = 0;
  for (int i = 0; i < k; ++i) {
    int s = st.sign_any(cycle[i], cycle[(i + 1) % k], z);
    if (want == 0) want = s;
    if (s != want) return false;
  }
  return true;
}

long count_inside_cycle(const sign_table& st, const std::vector<int>& cycle, int zmin, int zmax) {
  long cnt = 0;
  for (int z = zmin + 1; z < zmax; ++z)
    if (inside_convex_cycle(st, cycle, z)) ++cnt;
  return cnt;
}

long count_inside_triangle(const sign_table& st, int a, int b, int c, int skip = -1) {
  int lo = std::min({a, b, c}), hi = std::max({a, b, c});
  long cnt = 0;
  for (int z = lo + 1; z < hi; ++z)
    if (z != skip && inside_triangle(st, a, b, c, z)) ++cnt;
  return cnt;
}

struct frame {
  point_set canonical;
  std::vector<int> perm;      // canonical index -> original index
  std::vector<int> inv;       // original index -> canonical index
  std::vector<int> colors;    // canonical order
};

frame make_frame(const point_set& ps, int num_colors) {
  frame f;
  f.canonical = relabel_with_perm(ps, &f.perm);
  f.inv.assign(ps.n(), 0);
  for (int i = 0; i < ps.n(); ++i) f.inv[f.perm[i]] = i;
  f.colors.resize(ps.n());
  for (int i = 0; i < ps.n(); ++i) {
    int c = f.canonical[i].color;
    if (num_colors <= 1) c = 0;
    if (c < 0 || c >= std::max(num_colors, 1))
      throw spec_mismatch_error("point " + std::to_string(f.perm[i]) + " has color " +
                                std::to_string(c) + " outside 0.." + std::to_string(num_colors - 1));
    f.colors[i] = c;
  }
  return f;
}

// Subset enumeration helper: calls fn on every strictly increasing k-tuple.
template <typename F>
void for_subsets(int n, int k, F&& fn) {
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

std::vector<int> to_original(const frame& f, const std::vector<int>& idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (int i : idx) out.push_back(f.perm[i]);
  std::sort(out.begin(), out.end());
  return out;
}

// Interior count of a 4-subset under the "best simple polygon" rule used by
// the nc constraints: hull interior for convex quadruples; for non-convex
// ones the minimum over the three simple quadrilaterals, i.e. the inner
// triangle fan minus its heaviest cell.
long nc_interior(const sign_table& st, const std::vector<int>& v, bool* any_polygon) {
  std::vector<int> cycle;
  if (convex_cycle(st, v, &cycle)) {
    if (any_polygon) *any_polygon = false;
    return count_inside_cycle(st, cycle, v[0], v[3]);
  }
  if (any_polygon) *any_polygon = true;
  // One chosen point lies inside the triangle of the other three.
  int inner = -1;
  std::array<int, 3> outer{};
  for (int i = 0; i < 4 && inner < 0; ++i) {
    int o[3], t = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) o[t++] = v[j];
    if (inside_triangle(st, o[0], o[1], o[2], v[i])) {
      inner = v[i];
      outer = {o[0], o[1], o[2]};
    }
  }
  long s1 = count_inside_triangle(st, inner, outer[0], outer[1], -1);
  long s2 = count_inside_triangle(st, inner, outer[0], outer[2], -1);
  long s3 = count_inside_triangle(st, inner, outer[1], outer[2], -1);
  // exclude the chosen points themselves (inner is never inside a fan cell)
  long best = std::min({s1 + s2, s1 + s3, s2 + s3});
  return best;
}

long island_interior(const sign_table& st, const std::vector<int>& v) {
  std::vector<int> cycle;
  if (convex_cycle(st, v, &cycle)) return count_inside_cycle(st, cycle, v[0], v[3]);
  for (int i = 0; i < 4; ++i) {
    int o[3], t = 0;
    for (int j = 0; j < 4; ++j)
      if (j != i) o[t++] = v[j];
    if (inside_triangle(st, o[0], o[1], o[2], v[i]))
      return count_inside_triangle(st, o[0], o[1], o[2], v[i]);
  }
  throw std::logic_error("4-subset neither convex nor starred");
}

// Hull edges of the convex s-subset as sorted index pairs.
std::vector<std::pair<int, int>> cycle_edges(const std::vector<int>& cycle) {
  std::vector<std::pair<int, int>> es;
  const int k = static_cast<int>(cycle.size());
  for (int i = 0; i < k; ++i) {
    int a = cycle[i], b = cycle[(i + 1) % k];
    es.emplace_back(std::min(a, b), std::max(a, b));
  }
  return es;
}

}  // namespace

long count_interior(const point_set& ps, const std::vector<int>& hull_vertices) {
  // Standalone cup/cap check on the hull vertices (lexicographic order plays
  // the role of strict x-order), then strict point-in-polygon tests. Only
  // the hull itself must be strictly convex; unrelated collinearities in ps
  // are tolerated here.
  std::vector<int> v = hull_vertices;
  for (int i : v)
    if (i < 0 || i >= ps.n()) throw index_error("hull vertex " + std::to_string(i));
  auto lex_less = [&](int a, int b) {
    if (ps[a].x != ps[b].x) return ps[a].x < ps[b].x;
    return ps[a].y < ps[b].y;
  };
  std::sort(v.begin(), v.end(), lex_less);
  if (v.size() < 3) throw not_convex_error("need at least 3 vertices");
  std::vector<int> lower{v.front()}, upper;
  for (size_t i = 1; i + 1 < v.size(); ++i) {
    int s = orient(ps[v.front()], ps[v[i]], ps[v.back()]);
    if (s == 0) throw not_convex_error("collinear hull vertices");
    (s > 0 ? lower : upper).push_back(v[i]);
  }
  lower.push_back(v.back());
  std::vector<int> up_chain{v.front()};
  up_chain.insert(up_chain.end(), upper.begin(), upper.end());
  up_chain.push_back(v.back());
  for (size_t i = 0; i + 2 < lower.size(); ++i)
    if (orient(ps[lower[i]], ps[lower[i + 1]], ps[lower[i + 2]]) != +1)
      throw not_convex_error("lower chain not convex");
  for (size_t i = 0; i + 2 < up_chain.size(); ++i)
    if (orient(ps[up_chain[i]], ps[up_chain[i + 1]], ps[up_chain[i + 2]]) != -1)
      throw not_convex_error("upper chain not convex");
  std::vector<int> cycle = lower;
  cycle.insert(cycle.end(), upper.rbegin(), upper.rend());

  long cnt = 0;
  const int k = static_cast<int>(cycle.size());
  for (int z = 0; z < ps.n(); ++z) {
    if (std::find(cycle.begin(), cycle.end(), z) != cycle.end()) continue;
    int want = 0;
    bool inside = true;
    for (int i = 0; i < k && inside; ++i) {
      int s = orient(ps[cycle[i]], ps[cycle[(i + 1) % k]], ps[z]);
      if (s == 0) inside = false;  // on the boundary is not strictly inside
      if (want == 0) want = s;
      if (s != want) inside = false;
    }
    if (inside) ++cnt;
  }
  return cnt;
}

std::map<long, long> hexagon_census(const point_set& ps) {
  frame f = make_frame(ps, 1);
  sign_table st(f.canonical);
  std::map<long, long> census;
  const int n = ps.n();
  for_subsets(n, 6, [&](const std::vector<int>& v) {
    std::vector<int> cycle;
    if (!convex_cycle(st, v, &cycle)) return;
    census[count_inside_cycle(st, cycle, v[0], v[5])]++;
  });
  return census;
}

std::vector<forbidden_structure> find_forbidden(const point_set& ps, const edge_coloring* edges,
                                                const problem_spec& spec) {
  if (spec.edge_colored()) {
    if (!edges) throw spec_mismatch_error("edge-colored spec needs an edge coloring");
    if (edges->n != ps.n() || !edges->total())
      throw spec_mismatch_error("edge coloring is not total on the point set");
  } else if (edges) {
    throw spec_mismatch_error("point-colored spec given an edge coloring");
  }
  const int n = ps.n();
  const int c = spec.num_colors();
  frame f = make_frame(ps, spec.edge_colored() ? 1 : c);
  sign_table st(f.canonical);

  auto edge_color = [&](int a, int b) { return edges->get(f.perm[a], f.perm[b]); };
  auto mono = [&](const std::vector<int>& v, int color) {
    for (int i : v)
      if (f.colors[i] != color) return false;
    return true;
  };
  auto mono_edges = [&](const std::vector<int>& v, int color) {
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        if (edge_color(v[i], v[j]) != color) return false;
    return true;
  };

  std::vector<forbidden_structure> out;
  auto emit = [&](structure_kind kind, const std::vector<int>& v, int color, long cnt) {
    out.push_back({kind, to_original(f, v), color, cnt});
  };

  for (const auto& ct : spec.constraints) {
    switch (ct.kind) {
      case structure_kind::pair_: {
        for_subsets(n, 2, [&](const std::vector<int>& v) {
          if (mono(v, ct.color)) emit(ct.kind, v, ct.color, 0);
        });
        break;
      }
      case structure_kind::triangle: {
        for_subsets(n, 3, [&](const std::vector<int>& v) {
          if (!mono(v, ct.color)) return;
          long cnt = count_inside_triangle(st, v[0], v[1], v[2]);
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::convex4:
      case structure_kind::convex5: {
        int k = ct.kind == structure_kind::convex4 ? 4 : 5;
        for_subsets(n, k, [&](const std::vector<int>& v) {
          if (!mono(v, ct.color)) return;
          std::vector<int> cycle;
          if (!convex_cycle(st, v, &cycle)) return;
          long cnt = count_inside_cycle(st, cycle, v.front(), v.back());
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::nonconvex4: {
        for_subsets(n, 4, [&](const std::vector<int>& v) {
          if (!mono(v, ct.color)) return;
          long cnt = nc_interior(st, v, nullptr);
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::island4: {
        for_subsets(n, 4, [&](const std::vector<int>& v) {
          if (!mono(v, ct.color)) return;
          long cnt = island_interior(st, v);
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::hexagon:
      case structure_kind::hex_ex:
      case structure_kind::hex_sub: {
        for_subsets(n, 6, [&](const std::vector<int>& v) {
          if (!mono(v, ct.color)) return;
          std::vector<int> cycle;
          if (!convex_cycle(st, v, &cycle)) return;
          long cnt = count_inside_cycle(st, cycle, v.front(), v.back());
          if (ct.kind == structure_kind::hexagon) {
            if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
          } else if (ct.kind == structure_kind::hex_ex) {
            if (std::find(ct.interior_set.begin(), ct.interior_set.end(), cnt) !=
                ct.interior_set.end())
              emit(ct.kind, v, ct.color, cnt);
          } else {
            // hex_sub: the three quadrilaterals left by removing a pair of
            // opposite vertices of the hull cycle.
            for (int r = 0; r < 3; ++r) {
              std::vector<int> quad;
              for (int i = 0; i < 6; ++i)
                if (i != r && i != r + 3) quad.push_back(cycle[i]);
              std::sort(quad.begin(), quad.end());
              std::vector<int> qcycle;
              if (!convex_cycle(st, quad, &qcycle))
                throw std::logic_error("hexagon sub-quadrilateral not convex");
              long qcnt = count_inside_cycle(st, qcycle, quad.front(), quad.back());
              if (std::find(ct.interior_set.begin(), ct.interior_set.end(), qcnt) !=
                  ct.interior_set.end()) {
                emit(ct.kind, v, ct.color, qcnt);
                break;
              }
            }
          }
        });
        break;
      }
      case structure_kind::ramsey_triangle: {
        for_subsets(n, 3, [&](const std::vector<int>& v) {
          if (!mono_edges(v, ct.color)) return;
          long cnt = count_inside_triangle(st, v[0], v[1], v[2]);
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::ramsey_convex4:
      case structure_kind::ramsey_convex5: {
        int k = ct.kind == structure_kind::ramsey_convex4 ? 4 : 5;
        for_subsets(n, k, [&](const std::vector<int>& v) {
          std::vector<int> cycle;
          if (!convex_cycle(st, v, &cycle)) return;
          bool all = true;
          for (auto [a, b] : cycle_edges(cycle))
            if (edge_color(a, b) != ct.color) { all = false; break; }
          if (!all) return;
          long cnt = count_inside_cycle(st, cycle, v.front(), v.back());
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

verify_report verify(const point_set& ps, const edge_coloring* edges, const problem_spec& spec) {
  verify_report rep;
  try {
    rep.violations = find_forbidden(ps, edges, spec);
    rep.census = hexagon_census(ps);
    rep.valid = rep.violations.empty();
  } catch (const collinear_error& e) {
    rep.general_position = false;
    rep.valid = false;
    rep.note = e.what();
  } catch (const std::exception& e) {
    rep.valid = false;
    rep.note = e.what();
  }
  return rep;
}

}  // namespace esk
