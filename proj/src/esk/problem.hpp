#pragma once

#include <limits>
#include <string>
#include <vector>

#include "esk/errors.hpp"

namespace esk {

// Forbidden-structure kinds. `pair_` through `hexagon` act on point colors,
// the ramsey_* kinds act on edge colors. convex5 exists for searches that
// forbid monochromatic convex pentagons outright (g(5)-style instances).
enum class structure_kind {
  pair_,
  triangle,
  convex4,
  nonconvex4,
  island4,
  convex5,
  hexagon,
  hex_sub,
  hex_ex,
  ramsey_triangle,
  ramsey_convex4,
  ramsey_convex5,
};

const char* kind_name(structure_kind k);
bool kind_is_edge_colored(structure_kind k);

// Interior limit standing for "no restriction on interior points".
inline constexpr int no_limit = std::numeric_limits<int>::max();

struct constraint {
  structure_kind kind = structure_kind::triangle;
  int color = 0;
  // At-most-k interior bound for pair/triangle/convex/nonconvex/island/
  // hexagon/ramsey kinds (no_limit = convexity only). Ignored for hex_ex
  // and hex_sub, which use interior_set.
  int limit = 0;
  // hex_ex: the set Q of forbidden exact interior counts (0 must be in Q).
  // hex_sub: {0, q} tested against each of the three opposite-pair
  // quadrilaterals of a convex hexagon.
  std::vector<int> interior_set;
};

enum class color_mode { points, edges };

// Interior-count semantics for hexagon constraints inside SAT models:
// `exact` counts the full hull interior, `base_triangle` counts only the
// per-case base triangle (the encoding shortcut used for h(6,k) searches).
// Verification of point sets always uses exact counts.
enum class hex_mode { exact, base_triangle };

struct problem_spec {
  int n = 0;
  color_mode mode = color_mode::points;
  std::vector<constraint> constraints;
  bool symmetry_breaking = true;
  hex_mode hexagon_relaxation = hex_mode::base_triangle;

  int num_colors() const {
    int c = 0;
    for (const auto& ct : constraints) c = std::max(c, ct.color + 1);
    return c < 1 ? 1 : c;
  }

  bool edge_colored() const { return mode == color_mode::edges; }

  problem_spec with_n(int m) const {
    problem_spec s = *this;
    s.n = m;
    return s;
  }

  void validate() const;
};

// Builds a spec from `key=value` tokens following the generator conventions:
// n=N, tr_i=k, cv_i=k, nc_i=k, is_i=k, pr_i=0, cv5_i=k, hex=k, hexsub=q,
// hexex=k1,k2,..., rtr_i=k, rcv4_i=k, rcv5_i=k, sb=off, hexmode=exact.
// Color indices i start at 1 on the command line and map to 0-based ids.
problem_spec parse_problem_args(const std::vector<std::string>& tokens);

std::string describe(const problem_spec& spec);

}  // namespace esk
