#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "esk/cnf.hpp"
#include "esk/geometry.hpp"
#include "esk/ints.hpp"
#include "esk/problem.hpp"
#include "esk/signotope.hpp"

namespace esk {

// Fixed x coordinates for the linear subreduction. base 1 is the uniform
// grid 0..n-1; base C>1 the exponential grid -C^e,..,-C,-1,[0],1,C,..,C^e
// with the central 0 present only for odd n.
struct abscissa_grid {
  std::vector<bigint> xs;
  long base = 1;

  int n() const { return static_cast<int>(xs.size()); }
  static abscissa_grid make(int n, long base);
};

struct encode_options {
  // literal budget for the direct subset expansion of density clauses;
  // beyond it an at-most counter over exterior indicators is used instead
  size_t tr_expansion_budget = 5'000'000;
  // hard cap for the whole formula
  size_t max_literals = 400'000'000;
};

// CNF whose models are exactly the (signotope, coloring) pairs on n points
// without any forbidden structure from the spec.
cnf_formula build_cnf(const problem_spec& spec, const encode_options& opt = {});

// Signotope axioms (and optional symmetry breaking) only.
cnf_formula build_axioms(int n, bool symmetry_breaking);

// One guarded inequality of the hybrid formula: when `lit` holds, the
// 3-sparse integer row over the ordinates must satisfy sum >= 1 (dir=+1)
// or sum <= -1 (dir=-1).
struct guarded_inequality {
  int lit;
  std::array<int, 3> ys;
  std::array<bigint, 3> coef;
  int dir;
};

struct hybrid_formula {
  cnf_formula cnf;  // sb forced off
  std::vector<guarded_inequality> links;
  abscissa_grid grid;
};

hybrid_formula build_linear(const problem_spec& spec, const abscissa_grid& grid,
                            const encode_options& opt = {});

// SMT-LIB v2 script over integer ordinates and Boolean structure variables.
std::string emit_smt2(const problem_spec& spec, const abscissa_grid& grid,
                      const encode_options& opt = {});

// --- prefix-coloring decomposition ---------------------------------------

struct run_rule {
  int color = -1;  // -1: applies to every color
  int max_run = 0; // longest allowed run of equal colors
};

struct subproblem {
  int id = 0;
  std::vector<int> prefix_colors;  // colors of points 0..k-1; empty for the residual
  bool residual = false;
};

struct decomposition {
  int prefix_len = 0;
  std::vector<run_rule> rules;
  std::vector<std::vector<int>> color_groups;  // interchangeable color classes
  std::vector<subproblem> subproblems;
  long pruned = 0;  // prefixes removed by run rules

  long live_count() const {
    long c = 0;
    for (const auto& s : subproblems)
      if (!s.residual) ++c;
    return c;
  }
};

// Enumerates canonical prefix colorings (first-occurrence order inside each
// class of interchangeable colors), prunes prefixes containing a forced
// violation per the run rules, and appends one residual subproblem covering
// the pruned prefixes whenever pruning removed anything.
decomposition decompose(const problem_spec& spec, int prefix_len,
                        const std::vector<run_rule>& rules = {});

// Adds the subproblem's constraints to a formula built by build_cnf(spec):
// unit clauses fixing the prefix coloring, or, for the residual, the
// canonicity clauses plus blocking clauses for every live prefix.
void apply_subproblem(cnf_formula& f, const problem_spec& spec, const decomposition& d,
                      const subproblem& sub);

// --- cardinality machinery -------------------------------------------------

enum class count_kind { empty_triangle, empty_convex4, empty_convex5 };

enum class count_dir { at_most, greater };

// Extends a formula containing the signotope axioms on n points with
// indicator definitions for empty k-gons and a totalizer asserting
// (count <= bound) or (count > bound).
void add_cardinality(cnf_formula& f, int n, count_kind kind, int bound, count_dir dir,
                     const encode_options& opt = {});

// Bidirectional totalizer: returns output literals out[j] (1-based) with
// out[j] true iff at least j of the inputs are true.
std::vector<int> add_totalizer(cnf_formula& f, const std::vector<int>& inputs);

// --- model bridges ----------------------------------------------------------

std::vector<int> l_variables(const cnf_formula& f, int n);
std::vector<int> color_priority_vars(const cnf_formula& f);

signotope signotope_from_model(const cnf_formula& f, const std::vector<bool>& model, int n);
std::vector<int> point_colors_from_model(const cnf_formula& f, const std::vector<bool>& model,
                                         int n, int num_colors);
edge_coloring edge_colors_from_model(const cnf_formula& f, const std::vector<bool>& model, int n,
                                     int num_colors);

}  // namespace esk
