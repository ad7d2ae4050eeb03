#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "esk/errors.hpp"

namespace esk {

// Semantic variable names. Index slots depend on the kind:
//   L(a,b,c)          orientation of the triple, true = +1
//   C(i,a)            inverse color logic: false = point a has color i
//   EC(i,a,b)         inverse color logic on edges
//   EXT(a,b,c,z)      z is outside triangle abc
//   TR(a,b,c,q)       triangle abc has at most q interior points
//   INQ(a,b,c,z)      z is inside triangle abc (one-directional, for >=)
//   AL(id,k)          at least k interior points in region #id
//   IND(id)           structure indicator (cardinality mode)
//   CNT(id,j)         totalizer node output: count >= j
//   AUX(id)           anonymous tseitin variable
enum class var_kind : uint8_t { plain, L, C, EC, EXT, TR, INQ, AL, IND, CNT, AUX };

struct var_key {
  var_kind kind = var_kind::plain;
  std::array<int, 8> idx{-1, -1, -1, -1, -1, -1, -1, -1};
  bool operator==(const var_key& o) const { return kind == o.kind && idx == o.idx; }
};

struct var_key_hash {
  size_t operator()(const var_key& k) const {
    size_t h = static_cast<size_t>(k.kind);
    for (int v : k.idx) h = h * 1000003u + static_cast<size_t>(v + 1);
    return h;
  }
};

class var_registry {
 public:
  // returns the positive DIMACS variable for the key, creating it if new
  int ensure(var_kind kind, std::initializer_list<int> idx);
  // 0 when absent
  int lookup(var_kind kind, std::initializer_list<int> idx) const;
  int fresh_plain();  // anonymous variable

  int var_count() const { return static_cast<int>(names_.size()); }
  const var_key& name(int var) const { return names_.at(var - 1); }
  std::string describe(int var) const;

 private:
  var_key make_key(var_kind kind, std::initializer_list<int> idx) const;
  std::unordered_map<var_key, int, var_key_hash> map_;
  std::vector<var_key> names_;
};

struct cnf_formula {
  int var_count = 0;
  std::vector<std::vector<int>> clauses;
  var_registry registry;

  void add_clause(std::vector<int> lits);
  size_t literal_count() const;
  void sync_var_count() { var_count = std::max(var_count, registry.var_count()); }

  // fresh variable beyond both the registry and any raw DIMACS variables
  int fresh_var() {
    while (registry.var_count() < var_count) registry.fresh_plain();
    int v = registry.fresh_plain();
    var_count = registry.var_count();
    return v;
  }
};

// DIMACS cnf with the registry emitted as "c var <id> <name>" comments.
std::string emit_dimacs(const cnf_formula& f);
cnf_formula parse_dimacs(const std::string& text);

}  // namespace esk
