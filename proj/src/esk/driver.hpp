#pragma once

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "esk/encoder.hpp"
#include "esk/jsonio.hpp"
#include "esk/realize.hpp"
#include "esk/satcore.hpp"

namespace esk {

struct engine_spec {
  bool embedded = true;
  std::string command;  // external solver command line when not embedded
};

struct decide_options {
  engine_spec engine;
  solver_options sat;
  bool recheck_models = true;  // re-verify Sat models through the abstract checker
};

// decision plus model re-verification on the abstract level
sat_result decide(const problem_spec& spec, const decide_options& opt = {});

struct threshold_options {
  decide_options decide;
  bool attempt_realization = true;
  std::vector<long> grid_schedule = {1, 4, 2, 8};
  subreduce_options realize;
};

struct threshold_result {
  problem_spec spec_template;      // n is ignored
  int tilde_value = 0;             // Sat at tilde-1, Unsat at tilde
  bool exact = false;              // realization of size tilde-1 verified
  std::optional<realization_certificate> realization;
  int realized_size = 0;           // lower bound witness size (0 if none)
  std::vector<std::pair<int, std::string>> scan;  // per-n verdicts
};

// Ascending scan over [n_lo, n_hi]: verdicts must pass from Sat to Unsat
// inside the range; attaches a realization attempt at tilde-1 on the grid
// schedule. Throws boundary_error when the range misses the boundary.
threshold_result find_threshold(const problem_spec& spec_template, int n_lo, int n_hi,
                                const threshold_options& opt = {});

struct subproblem_status {
  int id = 0;
  std::string status;  // "sat" | "unsat" | "limit" | "pending"
  uint64_t conflicts = 0;
  double seconds = 0;
};

struct run_manifest {
  std::string spec_desc;
  int n = 0;
  int prefix_len = 0;
  int workers = 1;
  int seed = 0;
  std::string aggregate;  // "sat" | "unsat" | "incomplete"
  long live_subproblems = 0;
  long pruned_prefixes = 0;
  std::vector<subproblem_status> subs;
};

run_manifest run_decomposed(const problem_spec& spec, int prefix_len, int workers,
                            const std::vector<run_rule>& rules = {},
                            const std::string& manifest_path = "",
                            solver_options sat = {});

int minimize_count(int n, count_kind kind);

struct compare_result {
  long a_minus_b = 0;
  long b_minus_a = 0;
  bool a_complete = true;  // enumeration finished (vs stopped at the cap)
  bool b_complete = true;
};

// Counts signotopes minimizing kind A but not kind B and vice versa,
// enumerating at most `cap` witnesses per direction.
compare_result compare_minimizers(int n, count_kind a, count_kind b, long cap = 1);

verify_report verify_points(const std::string& path, const problem_spec& spec);

std::string emit_svg_file(const std::string& path);

// CLI entry point; returns the process exit code.
int run_cli(const std::string& cmd, const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace esk
