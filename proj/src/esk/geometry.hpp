#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "esk/ints.hpp"
#include "esk/problem.hpp"

namespace esk {

struct point {
  bigint x;
  bigint y;
  int color = -1;  // -1 = uncolored (monochrome / edge-colored instances)
};

struct point_set {
  std::vector<point> pts;

  point_set() = default;
  explicit point_set(std::vector<point> p) : pts(std::move(p)) {}

  int n() const { return static_cast<int>(pts.size()); }
  const point& operator[](int i) const { return pts[i]; }
  point& operator[](int i) { return pts[i]; }

  bool x_sorted() const;
};

// Total edge coloring on index pairs {a,b}, a != b.
struct edge_coloring {
  int n = 0;
  std::vector<int> c;  // row-major upper triangle, -1 = unset

  edge_coloring() = default;
  explicit edge_coloring(int n_) : n(n_), c(static_cast<size_t>(n_) * n_, -1) {}

  int get(int a, int b) const { return c[static_cast<size_t>(a) * n + b]; }
  void set(int a, int b, int col) {
    c[static_cast<size_t>(a) * n + b] = col;
    c[static_cast<size_t>(b) * n + a] = col;
  }
  bool total() const {
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (get(a, b) < 0) return false;
    return true;
  }
};

struct forbidden_structure {
  structure_kind kind;
  std::vector<int> vertices;  // strictly increasing point indices
  int color = 0;
  long interior_count = 0;

  friend bool operator==(const forbidden_structure& a, const forbidden_structure& b) {
    return a.kind == b.kind && a.vertices == b.vertices && a.color == b.color &&
           a.interior_count == b.interior_count;
  }
  friend bool operator<(const forbidden_structure& a, const forbidden_structure& b);
};

// Sign of the orientation determinant for the ordered triple (p,q,r):
// +1 counter-clockwise, -1 clockwise, 0 collinear.
int orient(const point& p, const point& q, const point& r);

// Order-type-equivalent copy with strictly increasing x coordinates.
// Points are sorted by x; when two x values collide the whole set is
// sheared by an orientation-preserving affine map first. Colors travel
// with their points. Throws collinear_error on degenerate input.
point_set relabel(const point_set& ps);

// relabel plus the permutation applied: out[i] = in[perm[i]].
point_set relabel_with_perm(const point_set& ps, std::vector<int>* perm);

// Number of points of ps strictly inside the convex hull of the given
// vertices (which must be in convex position), excluding the vertices.
long count_interior(const point_set& ps, const std::vector<int>& hull_vertices);

// Complete enumeration of spec violations. Point colors are read from the
// set itself; `edges` must be non-null exactly for edge-colored specs.
// Input need not be x-sorted; reported indices refer to the input order.
std::vector<forbidden_structure> find_forbidden(const point_set& ps,
                                                const edge_coloring* edges,
                                                const problem_spec& spec);

// Interior-count census over all convex 6-subsets: census[k] = number of
// convex hexagons with exactly k points of ps strictly inside.
std::map<long, long> hexagon_census(const point_set& ps);

struct verify_report {
  bool valid = false;
  bool general_position = true;
  std::vector<forbidden_structure> violations;
  std::map<long, long> census;
  std::string note;  // set when the report is invalid for structural reasons
};

// Wraps find_forbidden + hexagon_census into a serializable certificate
// check; never throws, failures are encoded in the report.
verify_report verify(const point_set& ps, const edge_coloring* edges, const problem_spec& spec);

}  // namespace esk
