#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "esk/cnf.hpp"

namespace esk {

enum class sat_status { sat, unsat, resource_limit };

struct sat_stats {
  uint64_t conflicts = 0;
  uint64_t decisions = 0;
  uint64_t propagations = 0;
  double seconds = 0.0;
};

struct sat_result {
  sat_status status = sat_status::resource_limit;
  // model[v] for v in 1..var_count, total over all formula variables;
  // only meaningful when status == sat (and re-verified before return)
  std::vector<bool> model;
  sat_stats stats;

  bool is_sat() const { return status == sat_status::sat; }
  bool is_unsat() const { return status == sat_status::unsat; }
};

struct solver_options {
  uint64_t max_conflicts = std::numeric_limits<uint64_t>::max();
  double max_seconds = std::numeric_limits<double>::infinity();
  int seed = 0;
  // variables branched on before all others (the coloring-first heuristic)
  std::vector<int> priority_vars;
};

// Conflict-driven clause learning solver: two watched literals, first-UIP
// learning with recursive minimization, exponential-decay activities with
// phase saving, Luby restarts, LBD-based learnt clause reduction.
class solver {
 public:
  explicit solver(const cnf_formula& f, solver_options opt = {});
  ~solver();
  solver(const solver&) = delete;
  solver& operator=(const solver&) = delete;

  // decision under assumptions; deterministic for fixed options
  sat_result solve(const std::vector<int>& assumptions = {});

  // add a clause after construction (used for blocking / decomposition)
  void add_clause(const std::vector<int>& lits);

  int var_count() const;

 private:
  struct impl;
  std::unique_ptr<impl> im_;
};

// Runs `solve`, checking the model against every clause before returning.
sat_result solve(const cnf_formula& f, const std::vector<int>& assumptions = {},
                 solver_options opt = {});

// Enumerates every distinct assignment to `projection` extendable to a model,
// via blocking clauses; on_model receives the projected literal values and
// may return false to stop early. Returns the number of models enumerated.
long solve_all(const cnf_formula& f, const std::vector<int>& projection,
               const std::function<bool(const std::vector<int>&)>& on_model,
               solver_options opt = {}, bool* complete = nullptr);

// Pipes DIMACS to an external solver command and parses the s/v answer
// lines. Sat models are re-verified against the formula before acceptance.
sat_result external_solve(const cnf_formula& f, const std::string& command);

bool model_satisfies(const cnf_formula& f, const std::vector<bool>& model);

}  // namespace esk
