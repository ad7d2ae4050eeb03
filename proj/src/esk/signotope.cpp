#include "esk/signotope.hpp"

#include <algorithm>
#include <sstream>

#include "esk/errors.hpp"

namespace esk {

namespace {

// number of sign changes in a length-4 sequence
inline int changes4(int a, int b, int c, int d) {
  return (a != b) + (b != c) + (c != d);
}

}  // namespace

bool axioms_ok(const signotope& s) {
  for (int d = 3; d < s.n; ++d)
    for (int c = 2; c < d; ++c)
      for (int b = 1; b < c; ++b)
        for (int a = 0; a < b; ++a)
          if (changes4(s.sign(a, b, c), s.sign(a, b, d), s.sign(a, c, d), s.sign(b, c, d)) > 1)
            return false;
  return true;
}

signotope from_points(const point_set& ps) {
  if (!ps.x_sorted()) throw not_canonical_error("x coordinates must be strictly increasing");
  signotope s(ps.n());
  for (int c = 2; c < ps.n(); ++c)
    for (int b = 1; b < c; ++b)
      for (int a = 0; a < b; ++a) {
        int v = orient(ps[a], ps[b], ps[c]);
        if (v == 0) throw collinear_error(a, b, c);
        s.set_sign(a, b, c, v);
      }
  return s;
}

bool interior(const signotope& s, int a, int b, int c, int x) {
  if (a < 0 || c >= s.n || !(a < b && b < c))
    throw index_error("triple " + std::to_string(a) + "," + std::to_string(b) + "," +
                      std::to_string(c));
  if (x < 0 || x >= s.n) throw index_error("x=" + std::to_string(x));
  if (x <= a || x >= c || x == b) return false;
  if (x < b) return s.sign(a, x, b) != s.sign(a, x, c);
  return s.sign(b, x, c) != s.sign(a, x, c);
}

long count_interior(const signotope& s, int a, int b, int c) {
  long cnt = 0;
  for (int x = a + 1; x < c; ++x)
    if (x != b && interior(s, a, b, c, x)) ++cnt;
  return cnt;
}

// --- case tables ----------------------------------------------------------

const std::vector<convex_case>& convex4_cases() {
  static const std::vector<convex_case> cases = {
      // 4-cup / 4-cap: diagonal (v0,v2)
      {{{0, 1, 2, +1}, {1, 2, 3, +1}}, {{{0, 1, 2}}, {{0, 2, 3}}}, {0, 1, 2, 3}, {0, 0, 0}},
      // 3-cup + 3-cap: cycle v0,v1,v3,v2, diagonal (v1,v2)
      {{{0, 1, 3, +1}, {0, 2, 3, -1}}, {{{0, 1, 2}}, {{1, 2, 3}}}, {0, 1, 3, 2}, {0, 0, 0}},
  };
  return cases;
}

const std::vector<convex_case>& convex5_cases() {
  static const std::vector<convex_case> cases = {
      {{{0, 1, 2, +1}, {1, 2, 3, +1}, {2, 3, 4, +1}},
       {{{0, 1, 2}}, {{0, 2, 3}}, {{0, 3, 4}}},
       {0, 1, 2, 3, 4},
       {0, 0, 0}},
      {{{0, 1, 2, +1}, {1, 2, 4, +1}, {0, 3, 4, -1}},
       {{{0, 1, 2}}, {{0, 2, 4}}, {{0, 3, 4}}},
       {0, 1, 2, 4, 3},
       {0, 0, 0}},
      {{{0, 1, 3, +1}, {1, 3, 4, +1}, {0, 2, 4, -1}},
       {{{0, 1, 3}}, {{0, 3, 4}}, {{0, 2, 4}}},
       {0, 1, 3, 4, 2},
       {0, 0, 0}},
      {{{0, 2, 3, +1}, {2, 3, 4, +1}, {0, 1, 4, -1}},
       {{{0, 2, 3}}, {{0, 3, 4}}, {{0, 1, 4}}},
       {0, 2, 3, 4, 1},
       {0, 0, 0}},
  };
  return cases;
}

const std::vector<convex_case>& hexagon_cases() {
  auto mk = [](std::vector<sign_cond> conds, std::array<int, 3> base, std::vector<int> cycle) {
    convex_case c;
    c.conds = std::move(conds);
    c.base = base;
    c.cycle = std::move(cycle);
    // hull interior as a fan from the first cycle vertex
    for (int i = 1; i + 1 < 6; ++i) {
      std::array<int, 3> t{c.cycle[0], c.cycle[i], c.cycle[i + 1]};
      std::sort(t.begin(), t.end());
      c.fan.push_back(t);
    }
    return c;
  };
  static const std::vector<convex_case> cases = {
      mk({{0, 1, 2, +1}, {1, 2, 3, +1}, {2, 3, 4, +1}, {3, 4, 5, +1}}, {0, 2, 4}, {0, 1, 2, 3, 4, 5}),
      mk({{0, 1, 2, +1}, {1, 2, 3, +1}, {2, 3, 5, +1}, {0, 4, 5, -1}}, {1, 3, 4}, {0, 1, 2, 3, 5, 4}),
      mk({{0, 1, 2, +1}, {1, 2, 4, +1}, {2, 4, 5, +1}, {0, 3, 5, -1}}, {1, 3, 4}, {0, 1, 2, 4, 5, 3}),
      mk({{0, 1, 3, +1}, {1, 3, 4, +1}, {3, 4, 5, +1}, {0, 2, 5, -1}}, {1, 2, 4}, {0, 1, 3, 4, 5, 2}),
      mk({{0, 2, 3, +1}, {2, 3, 4, +1}, {3, 4, 5, +1}, {0, 1, 5, -1}}, {1, 2, 4}, {0, 2, 3, 4, 5, 1}),
      mk({{0, 1, 2, +1}, {1, 2, 5, +1}, {0, 3, 4, -1}, {3, 4, 5, -1}}, {0, 2, 4}, {0, 1, 2, 5, 4, 3}),
      mk({{0, 1, 3, +1}, {1, 3, 5, +1}, {0, 2, 4, -1}, {2, 4, 5, -1}}, {0, 3, 4}, {0, 1, 3, 5, 4, 2}),
      mk({{0, 2, 3, +1}, {2, 3, 5, +1}, {0, 1, 4, -1}, {1, 4, 5, -1}}, {0, 3, 4}, {0, 2, 3, 5, 4, 1}),
  };
  return cases;
}

const std::vector<nonconvex_case>& nonconvex4_cases() {
  static const std::vector<nonconvex_case> cases = {
      // v1 inside triangle (v0,v2,v3)
      {{{0, 1, 3, +1}, {0, 1, 2, -1}},
       {{{{0, 1, 2}}, {{0, 1, 3}}, {{1, 2, 3}}}},
       {0, 2, 3}},
      // v2 inside triangle (v0,v1,v3)
      {{{0, 2, 3, +1}, {1, 2, 3, -1}},
       {{{{0, 1, 2}}, {{0, 2, 3}}, {{1, 2, 3}}}},
       {0, 1, 3}},
  };
  return cases;
}

int match_case(const signotope& s, const std::vector<int>& v, const std::vector<convex_case>& cases,
               int* r_out) {
  for (size_t ci = 0; ci < cases.size(); ++ci) {
    const auto& c = cases[ci];
    for (int r = -1; r <= 1; r += 2) {
      bool ok = true;
      for (const auto& cond : c.conds)
        if (s.sign(v[cond.i], v[cond.j], v[cond.k]) != cond.rel * r) { ok = false; break; }
      if (ok) {
        if (r_out) *r_out = r;
        return static_cast<int>(ci);
      }
    }
  }
  return -1;
}

// --- abstract forbidden-structure detection -------------------------------

namespace {

long count_in_fan(const signotope& s, const std::vector<int>& v,
                  const std::vector<std::array<int, 3>>& fan) {
  long cnt = 0;
  for (int z = v.front() + 1; z < v.back(); ++z) {
    if (std::find(v.begin(), v.end(), z) != v.end()) continue;
    for (const auto& t : fan)
      if (interior(s, v[t[0]], v[t[1]], v[t[2]], z)) { ++cnt; break; }
  }
  return cnt;
}

template <typename F>
void for_subsets(int n, int k, F&& fn) {
  if (k > n) return;
  std::vector<int> v(k);
  for (int i = 0; i < k; ++i) v[i] = i;
  while (true) {
    fn(const_cast<const std::vector<int>&>(v));
    int i = k - 1;
    while (i >= 0 && v[i] == n - k + i) --i;
    if (i < 0) break;
    ++v[i];
    for (int j = i + 1; j < k; ++j) v[j] = v[j - 1] + 1;
  }
}

}  // namespace

std::vector<forbidden_structure> find_forbidden_abstract(const signotope& s,
                                                         const std::vector<int>& colors,
                                                         const edge_coloring* edges,
                                                         const problem_spec& spec) {
  const int n = s.n;
  const int c = spec.num_colors();
  if (spec.edge_colored()) {
    if (!edges || edges->n != n || !edges->total())
      throw spec_mismatch_error("edge-colored spec needs a total edge coloring");
  } else if (c > 1 && static_cast<int>(colors.size()) != n) {
    throw spec_mismatch_error("point colors required");
  }

  auto color_of = [&](int i) { return c <= 1 ? 0 : colors[i]; };
  auto mono = [&](const std::vector<int>& v, int col) {
    for (int i : v)
      if (color_of(i) != col) return false;
    return true;
  };
  auto mono_edges = [&](const std::vector<int>& v, int col) {
    for (size_t i = 0; i < v.size(); ++i)
      for (size_t j = i + 1; j < v.size(); ++j)
        if (edges->get(v[i], v[j]) != col) return false;
    return true;
  };

  std::vector<forbidden_structure> out;
  auto emit = [&](structure_kind kind, const std::vector<int>& v, int col, long cnt) {
    out.push_back({kind, v, col, cnt});
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
          long cnt = count_interior(s, v[0], v[1], v[2]);
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::convex4:
      case structure_kind::convex5: {
        const auto& cases =
            ct.kind == structure_kind::convex4 ? convex4_cases() : convex5_cases();
        int k = ct.kind == structure_kind::convex4 ? 4 : 5;
        for_subsets(n, k, [&](const std::vector<int>& v) {
          if (!mono(v, ct.color)) return;
          int ci = match_case(s, v, cases, nullptr);
          if (ci < 0) return;
          long cnt = count_in_fan(s, v, cases[ci].fan);
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::nonconvex4: {
        for_subsets(n, 4, [&](const std::vector<int>& v) {
          if (!mono(v, ct.color)) return;
          int ci = match_case(s, v, convex4_cases(), nullptr);
          long cnt;
          if (ci >= 0) {
            cnt = count_in_fan(s, v, convex4_cases()[ci].fan);
          } else {
            const nonconvex_case* nc = nullptr;
            for (const auto& g : nonconvex4_cases()) {
              for (int r = -1; r <= 1 && !nc; r += 2) {
                bool ok = true;
                for (const auto& cond : g.conds)
                  if (s.sign(v[cond.i], v[cond.j], v[cond.k]) != cond.rel * r) { ok = false; break; }
                if (ok) nc = &g;
              }
              if (nc) break;
            }
            if (!nc) return;  // cannot happen on a signotope
            long sub[3];
            for (int t = 0; t < 3; ++t) {
              const auto& tri = nc->subtris[t];
              sub[t] = count_interior(s, v[tri[0]], v[tri[1]], v[tri[2]]);
            }
            cnt = std::min({sub[0] + sub[1], sub[0] + sub[2], sub[1] + sub[2]});
          }
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::island4: {
        for_subsets(n, 4, [&](const std::vector<int>& v) {
          if (!mono(v, ct.color)) return;
          int ci = match_case(s, v, convex4_cases(), nullptr);
          long cnt;
          if (ci >= 0) {
            cnt = count_in_fan(s, v, convex4_cases()[ci].fan);
          } else {
            const nonconvex_case* nc = nullptr;
            for (const auto& g : nonconvex4_cases()) {
              for (int r = -1; r <= 1 && !nc; r += 2) {
                bool ok = true;
                for (const auto& cond : g.conds)
                  if (s.sign(v[cond.i], v[cond.j], v[cond.k]) != cond.rel * r) { ok = false; break; }
                if (ok) nc = &g;
              }
              if (nc) break;
            }
            if (!nc) return;
            // hull = outer triangle; its count includes the starred chosen
            // point, which is not "other" by the island definition
            cnt = count_interior(s, v[nc->outer[0]], v[nc->outer[1]], v[nc->outer[2]]) - 1;
          }
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::hexagon:
      case structure_kind::hex_ex:
      case structure_kind::hex_sub: {
        for_subsets(n, 6, [&](const std::vector<int>& v) {
          if (!mono(v, ct.color)) return;
          int ci = match_case(s, v, hexagon_cases(), nullptr);
          if (ci < 0) return;
          const auto& hc = hexagon_cases()[ci];
          if (ct.kind == structure_kind::hexagon) {
            long cnt;
            if (spec.hexagon_relaxation == hex_mode::base_triangle) {
              const auto& b = hc.base;
              cnt = count_interior(s, v[b[0]], v[b[1]], v[b[2]]);
            } else {
              cnt = count_in_fan(s, v, hc.fan);
            }
            if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
          } else if (ct.kind == structure_kind::hex_ex) {
            long cnt;
            if (spec.hexagon_relaxation == hex_mode::base_triangle) {
              const auto& b = hc.base;
              cnt = count_interior(s, v[b[0]], v[b[1]], v[b[2]]);
            } else {
              cnt = count_in_fan(s, v, hc.fan);
            }
            if (std::find(ct.interior_set.begin(), ct.interior_set.end(), cnt) !=
                ct.interior_set.end())
              emit(ct.kind, v, ct.color, cnt);
          } else {
            for (int r = 0; r < 3; ++r) {
              std::vector<int> quad;
              for (int i = 0; i < 6; ++i)
                if (i != r && i != r + 3) quad.push_back(v[hc.cycle[i]]);
              std::sort(quad.begin(), quad.end());
              int qi = match_case(s, quad, convex4_cases(), nullptr);
              if (qi < 0) throw std::logic_error("hexagon sub-quadrilateral not convex");
              long qcnt = count_in_fan(s, quad, convex4_cases()[qi].fan);
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
          long cnt = count_interior(s, v[0], v[1], v[2]);
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
      case structure_kind::ramsey_convex4:
      case structure_kind::ramsey_convex5: {
        const auto& cases =
            ct.kind == structure_kind::ramsey_convex4 ? convex4_cases() : convex5_cases();
        int k = ct.kind == structure_kind::ramsey_convex4 ? 4 : 5;
        for_subsets(n, k, [&](const std::vector<int>& v) {
          int ci = match_case(s, v, cases, nullptr);
          if (ci < 0) return;
          const auto& cyc = cases[ci].cycle;
          bool all = true;
          for (size_t i = 0; i < cyc.size() && all; ++i) {
            int a = v[cyc[i]], b = v[cyc[(i + 1) % cyc.size()]];
            if (edges->get(a, b) != ct.color) all = false;
          }
          if (!all) return;
          long cnt = count_in_fan(s, v, cases[ci].fan);
          if (cnt <= ct.limit) emit(ct.kind, v, ct.color, cnt);
        });
        break;
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// --- enumeration -----------------------------------------------------------

namespace {

struct enumerator {
  int n;
  bool sb;
  const std::function<bool(const signotope&)>* predicate;
  const std::function<bool(const signotope&)>* on_each;
  signotope s;
  std::vector<std::array<int, 3>> order;  // colex order
  long count = 0;
  bool stopped = false;

  bool consistent(int a, int b, int c) {
    // all 4-tuples (p,a,b,c) complete once (a,b,c) is set
    for (int p = 0; p < a; ++p) {
      if (changes4(s.sign(p, a, b), s.sign(p, a, c), s.sign(p, b, c), s.sign(a, b, c)) > 1)
        return false;
    }
    return true;
  }

  void rec(size_t idx) {
    if (stopped) return;
    if (idx == order.size()) {
      if (predicate && *predicate && !(*predicate)(s)) return;
      ++count;
      if (on_each && *on_each && !(*on_each)(s)) stopped = true;
      return;
    }
    auto [a, b, c] = order[idx];
    for (int v : {+1, -1}) {
      if (sb && a == 0 && v == -1) continue;
      s.set_sign(a, b, c, v);
      if (consistent(a, b, c)) rec(idx + 1);
      if (stopped) return;
    }
    s.set_sign(a, b, c, 0);
  }
};

}  // namespace

long enumerate_signotopes(int n, bool symmetry_broken,
                          const std::function<bool(const signotope&)>& predicate,
                          const std::function<bool(const signotope&)>& on_each, int cap) {
  if (n > cap)
    throw cap_exceeded_error("enumeration of n=" + std::to_string(n) + " exceeds cap " +
                             std::to_string(cap));
  if (n < 3) {
    signotope s(std::max(n, 0));
    if (!predicate || predicate(s)) {
      if (on_each) on_each(s);
      return 1;
    }
    return 0;
  }
  enumerator e;
  e.n = n;
  e.sb = symmetry_broken;
  e.predicate = &predicate;
  e.on_each = &on_each;
  e.s = signotope(n);
  for (int c = 2; c < n; ++c)
    for (int b = 1; b < c; ++b)
      for (int a = 0; a < b; ++a) e.order.push_back({a, b, c});
  e.rec(0);
  return e.count;
}

std::string to_text(const signotope& s) {
  std::ostringstream os;
  os << "n=" << s.n << "\n";
  for (int a = 0; a < s.n; ++a)
    for (int b = a + 1; b < s.n; ++b)
      for (int c = b + 1; c < s.n; ++c)
        os << a << " " << b << " " << c << " " << (s.sign(a, b, c) > 0 ? "+1" : "-1") << "\n";
  return os.str();
}

signotope signotope_from_text(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!(is >> header) || header.rfind("n=", 0) != 0) throw parse_error("missing n= header");
  int n = std::stoi(header.substr(2));
  signotope s(n);
  size_t expect = signotope::num_triples(n);
  size_t got = 0;
  int a, b, c;
  std::string v;
  while (is >> a >> b >> c >> v) {
    if (!(0 <= a && a < b && b < c && c < n)) throw parse_error("bad triple in signotope text");
    int sgn = (v == "+1" || v == "1") ? +1 : (v == "-1" ? -1 : 0);
    if (sgn == 0) throw parse_error("bad sign '" + v + "'");
    s.set_sign(a, b, c, sgn);
    ++got;
  }
  if (got != expect) throw parse_error("signotope text incomplete");
  return s;
}

}  // namespace esk
