#include "esk/cnf.hpp"

#include <algorithm>
#include <sstream>

namespace esk {

var_key var_registry::make_key(var_kind kind, std::initializer_list<int> idx) const {
  var_key k;
  k.kind = kind;
  int i = 0;
  for (int v : idx) k.idx[i++] = v;
  return k;
}

int var_registry::ensure(var_kind kind, std::initializer_list<int> idx) {
  var_key k = make_key(kind, idx);
  auto it = map_.find(k);
  if (it != map_.end()) return it->second;
  names_.push_back(k);
  int id = static_cast<int>(names_.size());
  map_.emplace(k, id);
  return id;
}

int var_registry::lookup(var_kind kind, std::initializer_list<int> idx) const {
  auto it = map_.find(make_key(kind, idx));
  return it == map_.end() ? 0 : it->second;
}

int var_registry::fresh_plain() {
  var_key k;
  k.kind = var_kind::AUX;
  k.idx[0] = static_cast<int>(names_.size());
  names_.push_back(k);
  int id = static_cast<int>(names_.size());
  map_.emplace(k, id);
  return id;
}

std::string var_registry::describe(int var) const {
  static const char* tags[] = {"x", "L", "C", "EC", "EXT", "TR", "INQ", "AL", "IND", "CNT", "AUX"};
  const var_key& k = name(var);
  std::ostringstream os;
  os << tags[static_cast<int>(k.kind)];
  bool first = true;
  for (int v : k.idx) {
    if (v < 0) break;
    os << (first ? "(" : ",") << v;
    first = false;
  }
  if (!first) os << ")";
  return os.str();
}

void cnf_formula::add_clause(std::vector<int> lits) {
  if (lits.empty()) throw std::logic_error("empty clause added at build time");
  for (int l : lits)
    var_count = std::max(var_count, std::abs(l));
  clauses.push_back(std::move(lits));
}

size_t cnf_formula::literal_count() const {
  size_t n = 0;
  for (const auto& c : clauses) n += c.size();
  return n;
}

std::string emit_dimacs(const cnf_formula& f) {
  std::ostringstream os;
  for (int v = 1; v <= f.registry.var_count(); ++v) {
    auto d = f.registry.describe(v);
    if (d.rfind("AUX", 0) != 0) os << "c var " << v << " " << d << "\n";
  }
  os << "p cnf " << f.var_count << " " << f.clauses.size() << "\n";
  for (const auto& c : f.clauses) {
    for (int l : c) os << l << " ";
    os << "0\n";
  }
  return os.str();
}

cnf_formula parse_dimacs(const std::string& text) {
  cnf_formula f;
  std::istringstream is(text);
  std::string line;
  bool header = false;
  size_t expect_clauses = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == 'c') continue;
    std::istringstream ls(line);
    if (line[0] == 'p') {
      std::string p, fmt;
      if (!(ls >> p >> fmt >> f.var_count >> expect_clauses) || fmt != "cnf")
        throw parse_error("bad DIMACS header: " + line);
      header = true;
      continue;
    }
    if (!header) throw parse_error("clause before DIMACS header");
    int lit;
    std::vector<int> clause;
    while (ls >> lit) {
      if (lit == 0) break;
      if (std::abs(lit) > f.var_count) throw parse_error("literal out of range: " + line);
      clause.push_back(lit);
    }
    if (!clause.empty()) f.clauses.push_back(std::move(clause));
  }
  if (!header) throw parse_error("missing DIMACS header");
  if (expect_clauses != f.clauses.size())
    throw parse_error("clause count mismatch: header says " + std::to_string(expect_clauses) +
                      ", found " + std::to_string(f.clauses.size()));
  return f;
}

}  // namespace esk
