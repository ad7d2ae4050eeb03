#include "esk/driver.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace esk {

sat_result decide(const problem_spec& spec, const decide_options& opt) {
  auto f = build_cnf(spec);
  sat_result r;
  if (opt.engine.embedded) {
    solver_options sopt = opt.sat;
    if (sopt.priority_vars.empty()) sopt.priority_vars = color_priority_vars(f);
    r = solve(f, {}, sopt);
  } else {
    r = external_solve(f, opt.engine.command);
  }
  if (r.is_sat() && opt.recheck_models) {
    const int n = spec.n;
    const int c = spec.num_colors();
    signotope sig = signotope_from_model(f, r.model, n);
    if (!axioms_ok(sig)) throw std::logic_error("model violates the signotope axioms");
    std::vector<forbidden_structure> viol;
    if (spec.edge_colored()) {
      auto ec = edge_colors_from_model(f, r.model, n, c);
      viol = find_forbidden_abstract(sig, {}, &ec, spec);
    } else {
      auto colors = point_colors_from_model(f, r.model, n, c);
      viol = find_forbidden_abstract(sig, colors, nullptr, spec);
    }
    if (!viol.empty()) throw std::logic_error("model contains a forbidden structure");
  }
  return r;
}

threshold_result find_threshold(const problem_spec& spec_template, int n_lo, int n_hi,
                                const threshold_options& opt) {
  threshold_result res;
  res.spec_template = spec_template;
  int boundary = -1;
  bool seen_sat = false;
  for (int n = n_lo; n <= n_hi; ++n) {
    auto spec = spec_template.with_n(n);
    auto r = decide(spec, opt.decide);
    if (r.status == sat_status::resource_limit)
      throw std::runtime_error("resource limit at n=" + std::to_string(n));
    res.scan.emplace_back(n, r.is_sat() ? "sat" : "unsat");
    if (r.is_sat()) {
      seen_sat = true;
    } else {
      if (!seen_sat && n > n_lo)
        throw boundary_error("unsat below the scanned range");
      if (!seen_sat && n == n_lo && n_lo > 1)
        throw boundary_error("already unsat at the range start; lower n_lo");
      boundary = n;
      break;
    }
  }
  if (boundary < 0) throw boundary_error("still satisfiable at n=" + std::to_string(n_hi));
  res.tilde_value = boundary;
  if (opt.attempt_realization && boundary > n_lo) {
    auto spec = spec_template.with_n(boundary - 1);
    for (long base : opt.grid_schedule) {
      auto sub = subreduce(spec, abscissa_grid::make(boundary - 1, base), opt.realize);
      if (sub.status == subreduce_status::found) {
        res.realization = std::move(sub.certificate);
        res.realized_size = boundary - 1;
        res.exact = true;
        break;
      }
    }
  }
  return res;
}

namespace {

nlohmann::json manifest_to_json(const run_manifest& m) {
  nlohmann::json j;
  j["spec"] = m.spec_desc;
  j["n"] = m.n;
  j["prefix_len"] = m.prefix_len;
  j["workers"] = m.workers;
  j["seed"] = m.seed;
  j["aggregate"] = m.aggregate;
  j["live_subproblems"] = m.live_subproblems;
  j["pruned_prefixes"] = m.pruned_prefixes;
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& s : m.subs) {
    nlohmann::json e;
    e["id"] = s.id;
    e["status"] = s.status;
    e["conflicts"] = s.conflicts;
    e["seconds"] = s.seconds;
    subs.push_back(e);
  }
  j["subproblems"] = subs;
  return j;
}

}  // namespace

run_manifest run_decomposed(const problem_spec& spec, int prefix_len, int workers,
                            const std::vector<run_rule>& rules, const std::string& manifest_path,
                            solver_options sat) {
  auto d = decompose(spec, prefix_len, rules);
  run_manifest m;
  m.spec_desc = describe(spec);
  m.n = spec.n;
  m.prefix_len = prefix_len;
  m.workers = std::max(1, workers);
  m.seed = sat.seed;
  m.live_subproblems = d.live_count();
  m.pruned_prefixes = d.pruned;
  m.subs.resize(d.subproblems.size());
  for (size_t i = 0; i < d.subproblems.size(); ++i) {
    m.subs[i].id = d.subproblems[i].id;
    m.subs[i].status = "pending";
  }

  // resume from an existing manifest
  if (!manifest_path.empty()) {
    std::ifstream in(manifest_path);
    if (in) {
      try {
        nlohmann::json j;
        in >> j;
        if (j.value("spec", "") == m.spec_desc && j.value("prefix_len", -1) == prefix_len) {
          for (const auto& e : j["subproblems"]) {
            int id = e["id"].get<int>();
            if (id >= 0 && id < static_cast<int>(m.subs.size())) {
              m.subs[id].status = e["status"].get<std::string>();
              m.subs[id].conflicts = e.value("conflicts", 0ull);
              m.subs[id].seconds = e.value("seconds", 0.0);
            }
          }
        }
      } catch (...) {
        // unreadable manifest: start over
      }
    }
  }

  auto base = build_cnf(spec);
  std::mutex mu;
  std::atomic<size_t> next{0};
  auto flush = [&]() {
    if (manifest_path.empty()) return;
    std::ofstream out(manifest_path);
    out << manifest_to_json(m).dump(1) << "\n";
  };

  auto work = [&]() {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= d.subproblems.size()) return;
      {
        std::lock_guard<std::mutex> lk(mu);
        if (m.subs[i].status == "sat" || m.subs[i].status == "unsat") continue;  // resumed
      }
      cnf_formula f = base;
      apply_subproblem(f, spec, d, d.subproblems[i]);
      solver_options sopt = sat;
      sopt.seed = sat.seed * 1000003 + d.subproblems[i].id;  // derived per-subproblem seed
      if (sopt.priority_vars.empty()) sopt.priority_vars = color_priority_vars(f);
      auto r = solve(f, {}, sopt);
      std::lock_guard<std::mutex> lk(mu);
      m.subs[i].status = r.is_sat() ? "sat" : (r.is_unsat() ? "unsat" : "limit");
      m.subs[i].conflicts = r.stats.conflicts;
      m.subs[i].seconds = r.stats.seconds;
      flush();
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < m.workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  bool any_sat = false, any_limit = false;
  for (const auto& s : m.subs) {
    if (s.status == "sat") any_sat = true;
    if (s.status == "limit" || s.status == "pending") any_limit = true;
  }
  m.aggregate = any_sat ? "sat" : (any_limit ? "incomplete" : "unsat");
  flush();
  return m;
}

int minimize_count(int n, count_kind kind) { return min_structure_count(n, kind); }

compare_result compare_minimizers(int n, count_kind a, count_kind b, long cap) {
  compare_result res;
  int xa = min_structure_count(n, a);
  int xb = min_structure_count(n, b);
  auto run = [&](count_kind kept, int xkept, count_kind broken, int xbroken, long& count,
                 bool& complete) {
    auto f = build_axioms(n, false);
    add_cardinality(f, n, kept, xkept, count_dir::at_most);
    add_cardinality(f, n, broken, xbroken, count_dir::greater);
    auto proj = l_variables(f, n);
    bool full = true;
    long remaining = cap;
    count =
        solve_all(f, proj, [&](const std::vector<int>&) { return --remaining > 0; }, {}, &full);
    complete = full;
  };
  run(a, xa, b, xb, res.a_minus_b, res.a_complete);
  run(b, xb, a, xa, res.b_minus_a, res.b_complete);
  return res;
}

verify_report verify_points(const std::string& path, const problem_spec& spec) {
  edge_coloring edges;
  auto ps = load_point_set(path, &edges);
  const edge_coloring* ep = edges.n > 0 ? &edges : nullptr;
  if (spec.edge_colored() && !ep) throw spec_mismatch_error("spec needs edge colors");
  return verify(ps, spec.edge_colored() ? ep : nullptr, spec);
}

std::string emit_svg_file(const std::string& path) {
  edge_coloring edges;
  auto ps = load_point_set(path, &edges);
  return render_svg(ps, edges.n > 0 ? &edges : nullptr);
}

// --- CLI ---------------------------------------------------------------------

namespace {

struct cli_args {
  std::vector<std::string> spec_tokens;
  std::vector<std::string> files;
  std::map<std::string, std::string> opts;  // driver-level options
};

const std::set<std::string> driver_keys = {
    "nmin", "nmax",   "engine",  "xgrid", "prefix",   "workers", "manifest", "out",
    "kind", "a",      "b",       "cap",   "budget",   "conflicts", "proposals", "seed",
    "block", "known_min"};

cli_args split_args(const std::vector<std::string>& args) {
  cli_args c;
  for (const auto& a : args) {
    auto eq = a.find('=');
    if (eq == std::string::npos) {
      c.files.push_back(a);
      continue;
    }
    std::string key = a.substr(0, eq);
    size_t digits = key.size();
    while (digits > 0 && isdigit(static_cast<unsigned char>(key[digits - 1]))) --digits;
    std::string base = key.substr(0, digits);
    if (driver_keys.count(key) || base == "runrule") {
      c.opts[key] = a.substr(eq + 1);
    } else {
      c.spec_tokens.push_back(a);
    }
  }
  return c;
}

solver_options sat_options_from(const cli_args& c) {
  solver_options s;
  if (c.opts.count("budget")) s.max_seconds = std::stod(c.opts.at("budget"));
  if (c.opts.count("conflicts")) s.max_conflicts = std::stoull(c.opts.at("conflicts"));
  if (c.opts.count("seed")) s.seed = std::stoi(c.opts.at("seed"));
  return s;
}

engine_spec engine_from(const cli_args& c) {
  engine_spec e;
  auto it = c.opts.find("engine");
  if (it != c.opts.end() && it->second != "embedded") {
    e.embedded = false;
    e.command = it->second;
  }
  return e;
}

std::vector<run_rule> rules_from(const cli_args& c) {
  std::vector<run_rule> rules;
  for (const auto& [k, v] : c.opts) {
    if (k == "runrule") {
      rules.push_back({-1, std::stoi(v)});
    } else if (k.rfind("runrule", 0) == 0 && k.size() > 7) {
      rules.push_back({std::stoi(k.substr(7)) - 1, std::stoi(v)});
    }
  }
  return rules;
}

count_kind kind_from(const std::string& v) {
  if (v == "3" || v == "triangle") return count_kind::empty_triangle;
  if (v == "4" || v == "convex4") return count_kind::empty_convex4;
  if (v == "5" || v == "convex5") return count_kind::empty_convex5;
  throw spec_invalid_error("kind must be 3, 4 or 5");
}

void write_out(const cli_args& c, const std::string& content, std::ostream& out) {
  auto it = c.opts.find("out");
  if (it == c.opts.end()) {
    out << content;
    return;
  }
  std::ofstream f(it->second);
  f << content;
}

}  // namespace

int run_cli(const std::string& cmd, const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  cli_args c = split_args(args);

  if (cmd == "solve-dimacs") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    auto f = parse_dimacs(buf.str());
    auto r = solve(f);
    if (r.is_sat()) {
      out << "s SATISFIABLE\n";
      std::string line = "v";
      for (int v = 1; v <= f.var_count; ++v) {
        line += " " + std::to_string(r.model[v] ? v : -v);
        if (line.size() > 70) {
          out << line << "\n";
          line = "v";
        }
      }
      out << line << " 0\n";
      return 10;
    }
    out << "s UNSATISFIABLE\n";
    return 20;
  }

  if (cmd == "decide") {
    auto spec = parse_problem_args(c.spec_tokens);
    decide_options opt;
    opt.engine = engine_from(c);
    opt.sat = sat_options_from(c);
    auto r = decide(spec, opt);
    if (r.status == sat_status::resource_limit) {
      out << "UNKNOWN (resource limit)\n";
      return 2;
    }
    out << (r.is_sat() ? "SATISFIABLE" : "UNSATISFIABLE") << "\n";
    err << "c conflicts=" << r.stats.conflicts << " decisions=" << r.stats.decisions
        << " time=" << r.stats.seconds << "s\n";
    return 0;
  }

  if (cmd == "threshold") {
    auto spec = parse_problem_args(c.spec_tokens);
    if (!c.opts.count("nmin") || !c.opts.count("nmax"))
      throw spec_invalid_error("threshold needs nmin= and nmax=");
    threshold_options opt;
    opt.decide.engine = engine_from(c);
    opt.decide.sat = sat_options_from(c);
    opt.realize.sat = opt.decide.sat;
    if (c.opts.count("proposals")) opt.realize.max_proposals = std::stol(c.opts.at("proposals"));
    auto res =
        find_threshold(spec, std::stoi(c.opts.at("nmin")), std::stoi(c.opts.at("nmax")), opt);
    for (auto& [n, verdict] : res.scan) out << "n=" << n << " " << verdict << "\n";
    out << "tilde = " << res.tilde_value << "\n";
    if (res.exact) {
      out << "exact: realized " << res.realized_size << " points (grid base "
          << res.realization->grid.base << ")\n";
      if (c.opts.count("out")) {
        std::ofstream f(c.opts.at("out"));
        f << certificate_to_json(*res.realization).dump(1) << "\n";
      }
    } else {
      out << "interval: [" << res.realized_size + 1 << ", " << res.tilde_value << "]\n";
    }
    return 0;
  }

  if (cmd == "realize") {
    auto spec = parse_problem_args(c.spec_tokens);
    long base = c.opts.count("xgrid") ? std::stol(c.opts.at("xgrid")) : 1;
    subreduce_options opt;
    opt.sat = sat_options_from(c);
    if (c.opts.count("proposals")) opt.max_proposals = std::stol(c.opts.at("proposals"));
    if (c.opts.count("budget")) opt.max_seconds = std::stod(c.opts.at("budget"));
    if (c.opts.count("block")) opt.block_full_assignment = c.opts.at("block") == "full";
    auto res = subreduce(spec, abscissa_grid::make(spec.n, base), opt);
    if (res.status == subreduce_status::found) {
      out << certificate_to_json(*res.certificate).dump(1) << "\n";
      err << "c proposals=" << res.proposals << " infeasible=" << res.infeasible
          << " time=" << res.seconds << "s\n";
      return 0;
    }
    if (res.status == subreduce_status::exhausted_unrealizable) {
      out << "UNREALIZABLE on this grid (all models blocked)\n";
      return 1;
    }
    out << "UNKNOWN (budget exhausted after " << res.proposals << " proposals)\n";
    return 2;
  }

  if (cmd == "decompose") {
    auto spec = parse_problem_args(c.spec_tokens);
    if (!c.opts.count("prefix")) throw spec_invalid_error("decompose needs prefix=");
    auto d = decompose(spec, std::stoi(c.opts.at("prefix")), rules_from(c));
    nlohmann::json j;
    j["spec"] = describe(spec);
    j["prefix_len"] = d.prefix_len;
    j["live"] = d.live_count();
    j["pruned"] = d.pruned;
    j["total"] = d.subproblems.size();
    nlohmann::json subs = nlohmann::json::array();
    for (const auto& s : d.subproblems) {
      nlohmann::json e;
      e["id"] = s.id;
      e["residual"] = s.residual;
      e["prefix"] = s.prefix_colors;
      subs.push_back(e);
    }
    j["subproblems"] = subs;
    write_out(c, j.dump(1) + "\n", out);
    return 0;
  }

  if (cmd == "run-decomposed") {
    auto spec = parse_problem_args(c.spec_tokens);
    if (!c.opts.count("prefix")) throw spec_invalid_error("run-decomposed needs prefix=");
    int workers = c.opts.count("workers") ? std::stoi(c.opts.at("workers")) : 1;
    std::string manifest = c.opts.count("manifest") ? c.opts.at("manifest") : "";
    auto m = run_decomposed(spec, std::stoi(c.opts.at("prefix")), workers, rules_from(c),
                            manifest, sat_options_from(c));
    out << "subproblems=" << m.subs.size() << " aggregate=" << m.aggregate << "\n";
    return m.aggregate == "unsat" || m.aggregate == "sat" ? 0 : 2;
  }

  if (cmd == "minimize") {
    auto spec_n = parse_problem_args(c.spec_tokens);  // only n= is used
    auto kind = kind_from(c.opts.count("kind") ? c.opts.at("kind") : "3");
    out << "X = " << minimize_count(spec_n.n, kind) << "\n";
    return 0;
  }

  if (cmd == "census") {
    auto spec_n = parse_problem_args(c.spec_tokens);
    auto kind = kind_from(c.opts.count("kind") ? c.opts.at("kind") : "4");
    long base = c.opts.count("xgrid") ? std::stol(c.opts.at("xgrid")) : 1;
    int known = c.opts.count("known_min") ? std::stoi(c.opts.at("known_min")) : -1;
    auto res = grid_census(spec_n.n, kind, abscissa_grid::make(spec_n.n, base), known);
    out << "minimizing=" << res.total << " realizable=" << res.realizable << "\n";
    return 0;
  }

  if (cmd == "compare") {
    auto spec_n = parse_problem_args(c.spec_tokens);
    auto a = kind_from(c.opts.count("a") ? c.opts.at("a") : "3");
    auto b = kind_from(c.opts.count("b") ? c.opts.at("b") : "4");
    long cap = c.opts.count("cap") ? std::stol(c.opts.at("cap")) : 1;
    auto res = compare_minimizers(spec_n.n, a, b, cap);
    out << "A_minus_B=" << res.a_minus_b << (res.a_complete ? "" : "+") << " B_minus_A="
        << res.b_minus_a << (res.b_complete ? "" : "+") << "\n";
    return 0;
  }

  if (cmd == "verify") {
    if (c.files.empty()) throw parse_error("verify needs a point-set file");
    auto spec = parse_problem_args(c.spec_tokens);
    auto rep = verify_points(c.files[0], spec);
    out << report_to_json(rep).dump(1) << "\n";
    return rep.valid ? 0 : 1;
  }

  if (cmd == "svg") {
    if (c.files.empty()) throw parse_error("svg needs a point-set file");
    write_out(c, emit_svg_file(c.files[0]), out);
    return 0;
  }

  if (cmd == "emit-dimacs") {
    auto spec = parse_problem_args(c.spec_tokens);
    write_out(c, emit_dimacs(build_cnf(spec)), out);
    return 0;
  }

  if (cmd == "emit-smt2") {
    auto spec = parse_problem_args(c.spec_tokens);
    long base = c.opts.count("xgrid") ? std::stol(c.opts.at("xgrid")) : 1;
    write_out(c, emit_smt2(spec, abscissa_grid::make(spec.n, base)), out);
    return 0;
  }

  err << "unknown command '" << cmd << "'\n";
  return 2;
}

}  // namespace esk
