#include "esk/satcore.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <sstream>
#include <unordered_map>

#include <unistd.h>

namespace esk {

namespace {

using cref = uint32_t;
constexpr cref cref_undef = 0xffffffffu;

inline int lit_of(int dimacs) {  // internal literal: 2*var + sign
  int v = std::abs(dimacs);
  return 2 * v + (dimacs < 0 ? 1 : 0);
}
inline int neg(int lit) { return lit ^ 1; }
inline int var_of(int lit) { return lit >> 1; }
inline int to_dimacs(int lit) { return (lit & 1) ? -(lit >> 1) : (lit >> 1); }

enum lbool : int8_t { l_true = 1, l_false = -1, l_undef = 0 };

inline lbool value_of(int lit, const std::vector<int8_t>& assigns) {
  int8_t a = assigns[var_of(lit)];
  if (a == 0) return l_undef;
  return ((a > 0) == !(lit & 1)) ? l_true : l_false;
}

double luby(double y, int x) {
  int size, seq;
  for (size = 1, seq = 0; size < x + 1; ++seq, size = 2 * size + 1) {}
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  return std::pow(y, seq);
}

}  // namespace

struct solver::impl {
  // clause arena: [size][lbd][activity bits][lits...]
  std::vector<int> arena;
  std::vector<cref> problem_clauses;
  std::vector<cref> learnt_clauses;

  struct watcher {
    cref cr;
    int blocker;
  };
  std::vector<std::vector<watcher>> watches;  // per literal

  int nvars = 0;
  std::vector<int8_t> assigns;   // per var: 0 undef, +1 true, -1 false
  std::vector<int8_t> polarity;  // saved phase, initial false
  std::vector<int> level;
  std::vector<cref> reason;
  std::vector<double> activity;
  std::vector<int> priority;
  std::vector<int> trail;
  std::vector<int> trail_lim;
  size_t qhead = 0;

  // order heap (max by priority, then activity)
  std::vector<int> heap;
  std::vector<int> heap_pos;

  double var_inc = 1.0;
  double var_decay = 0.95;
  double cla_inc = 1.0;

  bool ok = true;
  sat_stats stats;
  solver_options opt;
  std::chrono::steady_clock::time_point t0;

  std::vector<int8_t> seen;
  std::vector<int> analyze_stack, analyze_clear;
  std::vector<int> lbd_mark;
  int lbd_stamp = 0;

  uint64_t reduce_at = 4000;
  uint64_t reduce_step = 2000;

  const cnf_formula* formula = nullptr;

  // --- clause accessors: header [size][lbd, -1 for problem clauses][act] ---
  int cl_size(cref c) const { return arena[c]; }
  int& cl_lbd(cref c) { return arena[c + 1]; }
  bool cl_learnt(cref c) const { return arena[c + 1] >= 0; }
  float cl_act(cref c) const {
    float f;
    std::memcpy(&f, &arena[c + 2], 4);
    return f;
  }
  void cl_set_act(cref c, float f) { std::memcpy(&arena[c + 2], &f, 4); }
  int* cl_lits(cref c) { return &arena[c + 3]; }
  const int* cl_lits(cref c) const { return &arena[c + 3]; }

  cref alloc_clause(const std::vector<int>& lits, bool learnt) {
    cref c = static_cast<cref>(arena.size());
    arena.push_back(static_cast<int>(lits.size()));
    arena.push_back(learnt ? 0x3fffffff : -1);
    arena.push_back(0);
    cl_set_act(c, 0.0f);
    for (int l : lits) arena.push_back(l);
    return c;
  }

  // --- heap keyed by (priority desc, activity desc, index asc) ---
  bool heap_less(int a, int b) const {  // "a has higher rank than b"
    if (priority[a] != priority[b]) return priority[a] > priority[b];
    if (activity[a] != activity[b]) return activity[a] > activity[b];
    return a < b;
  }
  void heap_up(int i) {
    int v = heap[i];
    while (i > 0) {
      int p = (i - 1) >> 1;
      if (heap_less(v, heap[p])) {
        heap[i] = heap[p];
        heap_pos[heap[i]] = i;
        i = p;
      } else
        break;
    }
    heap[i] = v;
    heap_pos[v] = i;
  }
  void heap_down(int i) {
    int v = heap[i];
    int n = static_cast<int>(heap.size());
    while (true) {
      int l = 2 * i + 1, r = 2 * i + 2, best = i;
      int bv = v;
      if (l < n && heap_less(heap[l], bv)) { best = l; bv = heap[l]; }
      if (r < n && heap_less(heap[r], bv)) { best = r; bv = heap[r]; }
      if (best == i) break;
      heap[i] = heap[best];
      heap_pos[heap[i]] = i;
      i = best;
    }
    heap[i] = v;
    heap_pos[v] = i;
  }
  void heap_insert(int v) {
    if (heap_pos[v] >= 0) return;
    heap_pos[v] = static_cast<int>(heap.size());
    heap.push_back(v);
    heap_up(heap_pos[v]);
  }
  int heap_pop() {
    int v = heap[0];
    heap[0] = heap.back();
    heap_pos[heap[0]] = 0;
    heap.pop_back();
    heap_pos[v] = -1;
    if (!heap.empty()) heap_down(0);
    return v;
  }
  void heap_update(int v) {
    if (heap_pos[v] >= 0) heap_up(heap_pos[v]);
  }

  void var_bump(int v) {
    activity[v] += var_inc;
    if (activity[v] > 1e100) {
      for (auto& a : activity) a *= 1e-100;
      var_inc *= 1e-100;
    }
    heap_update(v);
  }
  void cla_bump(cref c) {
    float a = cl_act(c) + static_cast<float>(cla_inc);
    if (a > 1e20f) {
      for (cref lc : learnt_clauses) cl_set_act(lc, cl_act(lc) * 1e-20f);
      cla_inc *= 1e-20;
      a = cl_act(c) + static_cast<float>(cla_inc);
    }
    cl_set_act(c, a);
  }

  int decision_level() const { return static_cast<int>(trail_lim.size()); }

  void enqueue(int lit, cref from) {
    int v = var_of(lit);
    assigns[v] = (lit & 1) ? -1 : 1;
    level[v] = decision_level();
    reason[v] = from;
    trail.push_back(lit);
  }

  cref propagate() {
    while (qhead < trail.size()) {
      int p = trail[qhead++];
      ++stats.propagations;
      int np = neg(p);  // the literal that just became false
      auto& ws = watches[p];
      size_t i = 0, j = 0;
      while (i < ws.size()) {
        watcher w = ws[i];
        if (value_of(w.blocker, assigns) == l_true) {
          ws[j++] = ws[i++];
          continue;
        }
        cref c = w.cr;
        int* lits = cl_lits(c);
        int size = cl_size(c);
        // make sure lits[1] is the false literal np
        if (lits[0] == np) std::swap(lits[0], lits[1]);
        if (value_of(lits[0], assigns) == l_true) {
          ws[j++] = {c, lits[0]};
          ++i;
          continue;
        }
        bool moved = false;
        for (int k = 2; k < size; ++k) {
          if (value_of(lits[k], assigns) != l_false) {
            std::swap(lits[1], lits[k]);
            watches[neg(lits[1])].push_back({c, lits[0]});
            moved = true;
            break;
          }
        }
        if (moved) {
          ++i;
          continue;
        }
        // unit or conflict
        ws[j++] = {c, lits[0]};
        ++i;
        if (value_of(lits[0], assigns) == l_false) {
          // conflict: copy remaining watchers and bail
          while (i < ws.size()) ws[j++] = ws[i++];
          ws.resize(j);
          qhead = trail.size();
          return c;
        }
        enqueue(lits[0], c);
      }
      ws.resize(j);
    }
    return cref_undef;
  }

  void attach(cref c) {
    int* lits = cl_lits(c);
    watches[neg(lits[0])].push_back({c, lits[1]});
    watches[neg(lits[1])].push_back({c, lits[0]});
  }

  void detach(cref c) {
    int* lits = cl_lits(c);
    for (int t = 0; t < 2; ++t) {
      auto& ws = watches[neg(lits[t])];
      for (size_t i = 0; i < ws.size(); ++i)
        if (ws[i].cr == c) {
          ws[i] = ws.back();
          ws.pop_back();
          break;
        }
    }
  }

  void cancel_until(int lvl) {
    if (decision_level() <= lvl) return;
    for (size_t i = trail.size(); i > static_cast<size_t>(trail_lim[lvl]);) {
      --i;
      int v = var_of(trail[i]);
      polarity[v] = assigns[v];
      assigns[v] = 0;
      reason[v] = cref_undef;
      heap_insert(v);
    }
    trail.resize(trail_lim[lvl]);
    trail_lim.resize(lvl);
    qhead = trail.size();
  }

  bool lit_redundant(int lit) {
    analyze_stack.clear();
    analyze_stack.push_back(lit);
    size_t top = analyze_clear.size();
    while (!analyze_stack.empty()) {
      int l = analyze_stack.back();
      analyze_stack.pop_back();
      cref r = reason[var_of(l)];
      if (r == cref_undef) {
        for (size_t i = top; i < analyze_clear.size(); ++i) seen[var_of(analyze_clear[i])] = 0;
        analyze_clear.resize(top);
        return false;
      }
      const int* lits = cl_lits(r);
      int size = cl_size(r);
      for (int k = 0; k < size; ++k) {
        int q = lits[k];
        int v = var_of(q);
        if (q == l || l == neg(q)) continue;
        if (seen[v] || level[v] == 0) continue;
        if (reason[v] == cref_undef) {
          for (size_t i = top; i < analyze_clear.size(); ++i) seen[var_of(analyze_clear[i])] = 0;
          analyze_clear.resize(top);
          return false;
        }
        seen[v] = 1;
        analyze_clear.push_back(q);
        analyze_stack.push_back(q);
      }
    }
    return true;
  }

  // first-UIP analysis; fills out_learnt (out_learnt[0] = asserting literal)
  int analyze(cref conflict, std::vector<int>& out_learnt) {
    out_learnt.clear();
    out_learnt.push_back(0);
    int path = 0;
    int p = -1;
    size_t index = trail.size();
    cref c = conflict;
    do {
      if (cl_learnt(c)) {
        cla_bump(c);
        int lbd = compute_lbd(cl_lits(c), cl_size(c));
        if (lbd < cl_lbd(c)) cl_lbd(c) = lbd;
      }
      const int* lits = cl_lits(c);
      int size = cl_size(c);
      for (int k = (p == -1 ? 0 : 1); k < size; ++k) {
        int q = lits[k];
        int v = var_of(q);
        if (!seen[v] && level[v] > 0) {
          seen[v] = 1;
          var_bump(v);
          if (level[v] >= decision_level())
            ++path;
          else
            out_learnt.push_back(q);
        }
      }
      while (!seen[var_of(trail[--index])]) {}
      p = trail[index];
      c = reason[var_of(p)];
      seen[var_of(p)] = 0;
      --path;
    } while (path > 0);
    out_learnt[0] = neg(p);

    // recursive minimization
    analyze_clear = out_learnt;
    size_t j = 1;
    for (size_t i = 1; i < out_learnt.size(); ++i) {
      int v = var_of(out_learnt[i]);
      if (reason[v] == cref_undef || !lit_redundant(out_learnt[i]))
        out_learnt[j++] = out_learnt[i];
    }
    out_learnt.resize(j);
    for (int l : analyze_clear) seen[var_of(l)] = 0;
    analyze_clear.clear();

    int bt = 0;
    if (out_learnt.size() > 1) {
      size_t max_i = 1;
      for (size_t i = 2; i < out_learnt.size(); ++i)
        if (level[var_of(out_learnt[i])] > level[var_of(out_learnt[max_i])]) max_i = i;
      std::swap(out_learnt[1], out_learnt[max_i]);
      bt = level[var_of(out_learnt[1])];
    }
    return bt;
  }

  int compute_lbd(const int* lits, int size) {
    lbd_mark.resize(nvars + 2, -1);
    ++lbd_stamp;
    int lbd = 0;
    for (int k = 0; k < size; ++k) {
      int lv = level[var_of(lits[k])];
      if (lv > 0 && lbd_mark[lv] != lbd_stamp) {
        lbd_mark[lv] = lbd_stamp;
        ++lbd;
      }
    }
    return lbd;
  }

  void reduce_db() {
    std::sort(learnt_clauses.begin(), learnt_clauses.end(), [&](cref a, cref b) {
      int la = cl_lbd(a), lb = cl_lbd(b);
      if (la != lb) return la < lb;
      return cl_act(a) > cl_act(b);
    });
    size_t keep = learnt_clauses.size() / 2;
    std::vector<cref> kept;
    kept.reserve(keep + 16);
    for (size_t i = 0; i < learnt_clauses.size(); ++i) {
      cref c = learnt_clauses[i];
      bool is_reason = false;
      int lit0 = cl_lits(c)[0];
      if (value_of(lit0, assigns) == l_true && reason[var_of(lit0)] == c) is_reason = true;
      if (i < keep || cl_lbd(c) <= 3 || is_reason || cl_size(c) <= 2) {
        kept.push_back(c);
      } else {
        detach(c);
      }
    }
    learnt_clauses.swap(kept);
    maybe_garbage_collect();
  }

  void maybe_garbage_collect() {
    size_t live = 0;
    for (cref c : problem_clauses) live += 3 + cl_size(c);
    for (cref c : learnt_clauses) live += 3 + cl_size(c);
    if (arena.size() < 2 * live + 1024) return;
    std::vector<int> fresh;
    fresh.reserve(live);
    std::unordered_map<cref, cref> reloc;
    auto move_cl = [&](cref c) {
      cref nc = static_cast<cref>(fresh.size());
      for (int k = 0; k < 3 + cl_size(c); ++k) fresh.push_back(arena[c + k]);
      reloc[c] = nc;
      return nc;
    };
    for (auto& c : problem_clauses) c = move_cl(c);
    for (auto& c : learnt_clauses) c = move_cl(c);
    arena.swap(fresh);
    for (int v = 1; v <= nvars; ++v) {
      if (reason[v] != cref_undef) {
        auto it = reloc.find(reason[v]);
        reason[v] = (it == reloc.end()) ? cref_undef : it->second;
      }
    }
    // remap watcher lists in place: literal order inside clauses is
    // unchanged, so the two watched positions stay valid
    for (auto& ws : watches) {
      size_t j = 0;
      for (auto& w : ws) {
        auto it = reloc.find(w.cr);
        if (it != reloc.end()) ws[j++] = {it->second, w.blocker};
      }
      ws.resize(j);
    }
  }

  bool add_clause_internal(std::vector<int> lits, bool learnt) {
    if (!ok) return false;
    if (!learnt) {
      std::sort(lits.begin(), lits.end());
      lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
      for (size_t i = 0; i + 1 < lits.size(); ++i)
        if (lits[i] == neg(lits[i + 1])) return true;  // tautology
      // drop false literals / detect satisfied at level 0
      std::vector<int> cl;
      for (int l : lits) {
        lbool v = value_of(l, assigns);
        if (v == l_true && level[var_of(l)] == 0) return true;
        if (v == l_false && level[var_of(l)] == 0) continue;
        cl.push_back(l);
      }
      lits.swap(cl);
    }
    if (lits.empty()) {
      ok = false;
      return false;
    }
    if (lits.size() == 1) {
      if (value_of(lits[0], assigns) == l_false) {
        ok = false;
        return false;
      }
      if (value_of(lits[0], assigns) == l_undef) {
        enqueue(lits[0], cref_undef);
        if (propagate() != cref_undef) {
          ok = false;
          return false;
        }
      }
      return true;
    }
    cref c = alloc_clause(lits, learnt);
    (learnt ? learnt_clauses : problem_clauses).push_back(c);
    attach(c);
    return true;
  }

  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  sat_result search(const std::vector<int>& assumptions) {
    sat_result res;
    t0 = std::chrono::steady_clock::now();
    if (!ok) {
      res.status = sat_status::unsat;
      res.stats = stats;
      return res;
    }
    cancel_until(0);
    int restart = 0;
    uint64_t restart_budget = static_cast<uint64_t>(luby(2.0, restart) * 100);
    uint64_t conflicts_this_restart = 0;
    std::vector<int> learnt;

    while (true) {
      cref conflict = propagate();
      if (conflict != cref_undef) {
        ++stats.conflicts;
        ++conflicts_this_restart;
        if (decision_level() == 0) {
          ok = false;
          res.status = sat_status::unsat;
          res.stats = stats;
          return res;
        }
        if (decision_level() <= static_cast<int>(assumptions.size())) {
          // every decision on the trail is an assumption, so the formula is
          // contradictory under the assumption prefix
          cancel_until(0);
          res.status = sat_status::unsat;
          res.stats = stats;
          return res;
        }
        int bt = analyze(conflict, learnt);
        bt = std::max(bt, static_cast<int>(0));
        cancel_until(bt);
        if (learnt.size() == 1) {
          if (decision_level() != 0) cancel_until(0);
          enqueue(learnt[0], cref_undef);
        } else {
          cref c = alloc_clause(learnt, true);
          cl_lbd(c) = compute_lbd(cl_lits(c), cl_size(c));
          learnt_clauses.push_back(c);
          attach(c);
          cla_bump(c);
          enqueue(learnt[0], c);
        }
        var_inc /= var_decay;
        cla_inc /= 0.999;
        if (stats.conflicts >= reduce_at) {
          reduce_db();
          reduce_at += reduce_step;
          reduce_step += 300;
        }
        if (stats.conflicts >= opt.max_conflicts || elapsed() > opt.max_seconds) {
          res.status = sat_status::resource_limit;
          res.stats = stats;
          return res;
        }
      } else {
        if (conflicts_this_restart >= restart_budget &&
            decision_level() > static_cast<int>(assumptions.size())) {
          ++restart;
          restart_budget = static_cast<uint64_t>(luby(2.0, restart) * 100);
          conflicts_this_restart = 0;
          cancel_until(static_cast<int>(assumptions.size()));
          continue;
        }
        int next = 0;
        // assumption prefix first
        while (decision_level() < static_cast<int>(assumptions.size())) {
          int a = lit_of(assumptions[decision_level()]);
          lbool v = value_of(a, assigns);
          if (v == l_true) {
            trail_lim.push_back(static_cast<int>(trail.size()));
            continue;
          }
          if (v == l_false) {
            res.status = sat_status::unsat;
            res.stats = stats;
            cancel_until(0);
            return res;
          }
          next = a;
          break;
        }
        if (next == 0) {
          while (!heap.empty()) {
            int v = heap_pop();
            if (assigns[v] == 0) {
              // saved phase; unassigned-so-far variables start at false
              next = 2 * v + (polarity[v] > 0 ? 0 : 1);
              break;
            }
          }
          if (next == 0) {
            res.status = sat_status::sat;
            res.model.assign(nvars + 1, false);
            for (int v = 1; v <= nvars; ++v) res.model[v] = assigns[v] > 0;
            res.stats = stats;
            cancel_until(0);
            return res;
          }
        }
        ++stats.decisions;
        trail_lim.push_back(static_cast<int>(trail.size()));
        enqueue(next, cref_undef);
      }
    }
  }
};

solver::solver(const cnf_formula& f, solver_options opt) : im_(new impl) {
  im_->opt = opt;
  im_->formula = &f;
  int n = std::max(f.var_count, f.registry.var_count());
  im_->nvars = n;
  im_->assigns.assign(n + 1, 0);
  im_->polarity.assign(n + 1, 0);
  im_->level.assign(n + 1, 0);
  im_->reason.assign(n + 1, cref_undef);
  im_->activity.assign(n + 1, 0.0);
  im_->priority.assign(n + 1, 0);
  im_->seen.assign(n + 1, 0);
  im_->heap_pos.assign(n + 1, -1);
  im_->watches.assign(2 * n + 2, {});
  for (int v : opt.priority_vars)
    if (v >= 1 && v <= n) im_->priority[v] = 1;
  // deterministic seed-dependent tie-break jitter
  if (opt.seed != 0) {
    uint64_t st = static_cast<uint64_t>(opt.seed) * 0x9e3779b97f4a7c15ull + 1;
    for (int v = 1; v <= n; ++v) {
      st ^= st << 13;
      st ^= st >> 7;
      st ^= st << 17;
      im_->activity[v] = static_cast<double>(st % 1024) * 1e-9;
    }
  }
  for (int v = 1; v <= n; ++v) im_->heap_insert(v);
  for (const auto& c : f.clauses) {
    std::vector<int> lits;
    lits.reserve(c.size());
    for (int l : c) lits.push_back(lit_of(l));
    if (!im_->add_clause_internal(std::move(lits), false)) break;
  }
}

solver::~solver() = default;

int solver::var_count() const { return im_->nvars; }

void solver::add_clause(const std::vector<int>& lits) {
  im_->cancel_until(0);
  std::vector<int> internal;
  internal.reserve(lits.size());
  for (int l : lits) internal.push_back(lit_of(l));
  im_->add_clause_internal(std::move(internal), false);
}

sat_result solver::solve(const std::vector<int>& assumptions) {
  sat_result r = im_->search(assumptions);
  r.stats.seconds = im_->elapsed();
  return r;
}

bool model_satisfies(const cnf_formula& f, const std::vector<bool>& model) {
  for (const auto& c : f.clauses) {
    bool sat = false;
    for (int l : c) {
      int v = std::abs(l);
      if (v >= static_cast<int>(model.size())) return false;
      if ((l > 0) == model[v]) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

sat_result solve(const cnf_formula& f, const std::vector<int>& assumptions, solver_options opt) {
  solver s(f, opt);
  sat_result r = s.solve(assumptions);
  if (r.is_sat()) {
    for (int a : assumptions) {
      int v = std::abs(a);
      if ((a > 0) != r.model[v]) throw std::logic_error("model violates an assumption");
    }
    if (!model_satisfies(f, r.model)) throw std::logic_error("solver returned a bad model");
  }
  return r;
}

long solve_all(const cnf_formula& f, const std::vector<int>& projection,
               const std::function<bool(const std::vector<int>&)>& on_model, solver_options opt,
               bool* complete) {
  for (int v : projection)
    if (v < 1) throw std::invalid_argument("projection variables must be positive");
  solver s(f, opt);
  long count = 0;
  if (complete) *complete = true;
  while (true) {
    sat_result r = s.solve();
    if (r.status == sat_status::resource_limit) {
      if (complete) *complete = false;
      return count;
    }
    if (r.is_unsat()) return count;
    if (!model_satisfies(f, r.model)) throw std::logic_error("solver returned a bad model");
    std::vector<int> projected;
    projected.reserve(projection.size());
    std::vector<int> blocking;
    blocking.reserve(projection.size());
    for (int v : projection) {
      projected.push_back(r.model[v] ? v : -v);
      blocking.push_back(r.model[v] ? -v : v);
    }
    ++count;
    if (on_model && !on_model(projected)) {
      if (complete) *complete = false;
      return count;
    }
    if (blocking.empty()) return count;  // single model when no projection
    s.add_clause(blocking);
  }
}

sat_result external_solve(const cnf_formula& f, const std::string& command) {
  std::string dimacs = emit_dimacs(f);
  std::string tmpl = "/tmp/esk_dimacs_XXXXXX";
  std::vector<char> path(tmpl.begin(), tmpl.end());
  path.push_back('\0');
  int fd = mkstemp(path.data());
  if (fd < 0) throw solver_crash_error("cannot create temp file");
  FILE* tf = fdopen(fd, "w");
  fwrite(dimacs.data(), 1, dimacs.size(), tf);
  fclose(tf);
  std::string cmd = command + " < " + path.data() + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) {
    remove(path.data());
    throw solver_crash_error("cannot run '" + command + "'");
  }
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  int rc = pclose(pipe);
  remove(path.data());

  sat_result res;
  std::istringstream is(output);
  std::string line;
  bool have_status = false;
  std::vector<int> vlits;
  while (std::getline(is, line)) {
    if (line.rfind("s SATISFIABLE", 0) == 0) {
      res.status = sat_status::sat;
      have_status = true;
    } else if (line.rfind("s UNSATISFIABLE", 0) == 0) {
      res.status = sat_status::unsat;
      have_status = true;
    } else if (line.rfind("v ", 0) == 0 || line == "v") {
      std::istringstream ls(line.substr(1));
      int lit;
      while (ls >> lit)
        if (lit != 0) vlits.push_back(lit);
    }
  }
  if (!have_status) {
    if (rc != 0) throw solver_crash_error("'" + command + "' exited with " + std::to_string(rc));
    throw parse_error("external solver printed no s-line");
  }
  if (res.is_sat()) {
    res.model.assign(std::max(f.var_count, f.registry.var_count()) + 1, false);
    for (int l : vlits) {
      int v = std::abs(l);
      if (v < static_cast<int>(res.model.size())) res.model[v] = l > 0;
    }
    if (!model_satisfies(f, res.model))
      throw parse_error("external solver model fails verification");
  }
  return res;
}

}  // namespace esk
