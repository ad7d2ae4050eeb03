#pragma once

#include <optional>
#include <vector>

#include "esk/encoder.hpp"
#include "esk/geometry.hpp"
#include "esk/ints.hpp"
#include "esk/satcore.hpp"
#include "esk/signotope.hpp"

namespace esk {

// 3-sparse integer row asserting sum of coef*y >= 1.
struct linear_constraint {
  std::array<int, 3> ys;
  std::array<bigint, 3> coef;
  std::array<int, 3> triple;  // source triple, for certificates
};

struct linear_system {
  int n = 0;
  std::vector<linear_constraint> rows;
};

// The orientation constraints of a signotope on fixed abscissae,
// sign-normalized so every row reads >= 1.
linear_system system_for(const signotope& s, const abscissa_grid& grid);

struct rational_solution {
  std::vector<bigrat> ys;
};

struct lp_outcome {
  std::optional<rational_solution> solution;
  // on infeasibility: row indices of a Farkas-infeasible subsystem
  std::vector<int> farkas_rows;
  long pivots = 0;
};

// Exact rational feasibility; no tolerances anywhere. The returned solution
// satisfies every row with margin >= 1 exactly; on infeasibility the Farkas
// support (at most n+1 rows) certifies it.
lp_outcome lp_solve(const linear_system& sys);

std::optional<rational_solution> lp_feasible(const signotope& s, const abscissa_grid& grid);

// Integer ordinates realizing the same signotope: multiply by the positive
// lcm of the denominators.
std::vector<bigint> scale_to_integers(const rational_solution& sol);

struct realization_certificate {
  point_set points;  // integer coordinates, colors attached for point specs
  signotope sig;
  abscissa_grid grid;
  std::optional<edge_coloring> edges;
  bool signotope_checked = false;  // from_points(points) == sig, sign by sign
  verify_report report;            // geometry verification against the spec
};

enum class subreduce_status { found, exhausted_unrealizable, resource_limit };

struct subreduce_result {
  subreduce_status status = subreduce_status::resource_limit;
  std::optional<realization_certificate> certificate;
  long proposals = 0;
  long infeasible = 0;
  double seconds = 0;
};

struct subreduce_options {
  long max_proposals = 1000000;
  double max_seconds = 3600.0;
  // false: block only the Farkas triples (shorter clauses, more pruning);
  // true: block the complete orientation assignment
  bool block_full_assignment = false;
  solver_options sat;
};

// Lazy combined search: the CDCL core proposes total (orientation, coloring)
// models of the full formula; the exact LP accepts or refutes the proposed
// signotope on the grid; refutations are learned as blocking clauses. On
// success the certificate carries integer points that re-verify through the
// geometric checker.
subreduce_result subreduce(const problem_spec& spec, const abscissa_grid& grid,
                           const subreduce_options& opt = {});

// Minimum number of empty structures of the kind over all signotopes on n
// points, by binary search over cardinality bounds.
int min_structure_count(int n, count_kind kind, solver_options opt = {});

struct census_result {
  long total = 0;       // minimizing signotopes
  long realizable = 0;  // of those, LP-feasible on the grid
};

// Enumerates the minimizing signotopes via the cardinality encoding and
// counts how many are feasible on the grid. Symmetry breaking is off so the
// census is a plain count.
census_result grid_census(int n, count_kind kind, const abscissa_grid& grid,
                          int known_min = -1);

}  // namespace esk
