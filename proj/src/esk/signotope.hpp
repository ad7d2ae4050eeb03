#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "esk/geometry.hpp"
#include "esk/problem.hpp"

namespace esk {

// Monotone rank-3 signotope: a total sign map on index triples a<b<c such
// that for every a<b<c<d the sequence (s(abc), s(abd), s(acd), s(bcd)) has
// at most one sign change.
struct signotope {
  int n = 0;
  std::vector<int8_t> signs;  // rank3-indexed, values -1/+1

  signotope() = default;
  explicit signotope(int n_) : n(n_), signs(num_triples(n_), 0) {}

  static size_t rank3(int a, int b, int c) {
    return static_cast<size_t>(c) * (c - 1) * (c - 2) / 6 + static_cast<size_t>(b) * (b - 1) / 2 +
           static_cast<size_t>(a);
  }
  static size_t num_triples(int n) {
    return n < 3 ? 0 : static_cast<size_t>(n) * (n - 1) * (n - 2) / 6;
  }

  int sign(int a, int b, int c) const { return signs[rank3(a, b, c)]; }
  void set_sign(int a, int b, int c, int s) { signs[rank3(a, b, c)] = static_cast<int8_t>(s); }

  int sign_any(int a, int b, int c) const {
    int parity = 1;
    if (a > b) { std::swap(a, b); parity = -parity; }
    if (b > c) { std::swap(b, c); parity = -parity; }
    if (a > b) { std::swap(a, b); parity = -parity; }
    return parity * sign(a, b, c);
  }

  friend bool operator==(const signotope& x, const signotope& y) {
    return x.n == y.n && x.signs == y.signs;
  }
};

bool axioms_ok(const signotope& s);

// Order type of a canonical (strictly x-sorted) general-position point set.
signotope from_points(const point_set& ps);

// Abstract point-in-triangle predicate: x between a and b compares the
// orientations of (a,x,b) and (a,x,c); x between b and c compares (b,x,c)
// and (a,x,c). Indices outside (a,c) are exterior by x-order.
bool interior(const signotope& s, int a, int b, int c, int x);

long count_interior(const signotope& s, int a, int b, int c);

// Same contract as geometry::find_forbidden, evaluated on the abstract
// level. `colors[i]` gives the point colors (ignored when the spec is
// monochrome), `edges` the edge colors for ramsey specs. Hexagon interior
// semantics follow spec.hexagon_relaxation.
std::vector<forbidden_structure> find_forbidden_abstract(const signotope& s,
                                                         const std::vector<int>& colors,
                                                         const edge_coloring* edges,
                                                         const problem_spec& spec);

// Streams every axiom-satisfying sign map (with s(0,b,c)=+1 when symmetry
// broken), optionally filtered by `predicate`; `on_each` may return false
// to stop early. Returns the number of signotopes emitted.
long enumerate_signotopes(int n, bool symmetry_broken,
                          const std::function<bool(const signotope&)>& predicate,
                          const std::function<bool(const signotope&)>& on_each,
                          int cap = 9);

// Text exchange format: header "n=<n>", then one line "a b c +1|-1" per
// triple in lexicographic (a,b,c) order.
std::string to_text(const signotope& s);
signotope signotope_from_text(const std::string& text);

// --- combinatorial case tables shared with the CNF encoder ---------------
//
// A convex k-subset of an x-sorted set falls into one of finitely many
// chain-split cases; each case is recognized by sign conditions of the form
// sign(v[i],v[j],v[k]) == rel * R for a common R in {-1,+1}.

struct sign_cond {
  int i, j, k;  // positions within the sorted tuple
  int rel;      // +1 or -1 relative to the case's orientation R
};

struct convex_case {
  std::vector<sign_cond> conds;
  std::vector<std::array<int, 3>> fan;  // triangles partitioning the hull interior
  std::vector<int> cycle;               // hull cyclic order (positions)
  std::array<int, 3> base;              // base triangle (hexagons only)
};

const std::vector<convex_case>& convex4_cases();
const std::vector<convex_case>& convex5_cases();
const std::vector<convex_case>& hexagon_cases();

// Non-convex 4-subset groups: conds identify which chosen point is interior;
// `subtris` are the three cells of the inner triangle fan, `outer` the hull.
struct nonconvex_case {
  std::vector<sign_cond> conds;
  std::array<std::array<int, 3>, 3> subtris;
  std::array<int, 3> outer;
};

const std::vector<nonconvex_case>& nonconvex4_cases();

// Returns the index of the matching case and the orientation R, or -1.
int match_case(const signotope& s, const std::vector<int>& v, const std::vector<convex_case>& cases,
               int* r_out);

}  // namespace esk
