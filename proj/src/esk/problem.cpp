#include "esk/problem.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace esk {

const char* kind_name(structure_kind k) {
  switch (k) {
    case structure_kind::pair_: return "pair";
    case structure_kind::triangle: return "triangle";
    case structure_kind::convex4: return "convex4";
    case structure_kind::nonconvex4: return "nonconvex4";
    case structure_kind::island4: return "island4";
    case structure_kind::convex5: return "convex5";
    case structure_kind::hexagon: return "hexagon";
    case structure_kind::hex_sub: return "hex_sub";
    case structure_kind::hex_ex: return "hex_ex";
    case structure_kind::ramsey_triangle: return "ramsey_triangle";
    case structure_kind::ramsey_convex4: return "ramsey_convex4";
    case structure_kind::ramsey_convex5: return "ramsey_convex5";
  }
  return "?";
}

bool kind_is_edge_colored(structure_kind k) {
  return k == structure_kind::ramsey_triangle || k == structure_kind::ramsey_convex4 ||
         k == structure_kind::ramsey_convex5;
}

void problem_spec::validate() const {
  if (n < 1) throw spec_invalid_error("n must be positive");
  std::vector<std::pair<int, int>> seen;
  for (const auto& ct : constraints) {
    if (ct.color < 0) throw spec_invalid_error("negative color id");
    if (kind_is_edge_colored(ct.kind) != (mode == color_mode::edges))
      throw spec_invalid_error(std::string("constraint ") + kind_name(ct.kind) +
                               " does not match the coloring mode");
    auto key = std::make_pair(static_cast<int>(ct.kind), ct.color);
    if (std::find(seen.begin(), seen.end(), key) != seen.end())
      throw spec_invalid_error(std::string("duplicate (") + kind_name(ct.kind) + ", color " +
                               std::to_string(ct.color) + ")");
    seen.push_back(key);
    if (ct.kind == structure_kind::hex_ex || ct.kind == structure_kind::hex_sub) {
      if (ct.interior_set.empty()) throw spec_invalid_error("empty interior set");
      if (std::find(ct.interior_set.begin(), ct.interior_set.end(), 0) == ct.interior_set.end())
        throw spec_invalid_error("interior set must contain 0");
      for (int q : ct.interior_set)
        if (q < 0) throw spec_invalid_error("negative interior count in set");
      if (ct.kind == structure_kind::hex_sub && ct.interior_set.size() != 2)
        throw spec_invalid_error("hex_sub takes the pair {0, q}");
    } else if (ct.limit < 0) {
      throw spec_invalid_error("negative interior limit");
    }
  }
  // Dense color ids 0..c-1 (vacuous for constraint-free specs).
  int c = 0;
  for (const auto& ct : constraints) c = std::max(c, ct.color + 1);
  std::vector<bool> used(c, false);
  for (const auto& ct : constraints) used[ct.color] = true;
  for (int i = 0; i < c; ++i)
    if (!used[i]) throw spec_invalid_error("color ids not dense: missing " + std::to_string(i));
}

namespace {

int parse_limit(const std::string& v) {
  if (v == "inf") return no_limit;
  int k = std::stoi(v);
  if (k < 0) throw spec_invalid_error("negative limit " + v);
  // The generator convention treats any bound >= 99 as "no restriction".
  return k >= 99 ? no_limit : k;
}

std::vector<int> parse_int_list(const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

// Splits "tr2" into ("tr", 1); the base is matched longest-first so "cv51"
// reads as kind cv5 with color 1, not cv with color 51.
bool split_key(const std::string& key, std::string& base, int& color) {
  static const char* bases[] = {"hexsub", "hexmode", "hexex", "hex", "rcv4", "rcv5", "cv4",
                                "cv5",    "mode",    "n",     "sb",  "pr",   "rtr",  "tr",
                                "cv",     "nc",      "is"};
  base.clear();
  for (const char* b : bases) {
    std::string s(b);
    if (key.rfind(s, 0) == 0 && s.size() > base.size()) {
      // remainder must be empty or all digits
      bool digits = true;
      for (size_t i = s.size(); i < key.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(key[i]))) digits = false;
      if (digits) base = s;
    }
  }
  if (base.empty()) return false;
  color = 0;
  if (base.size() < key.size()) {
    color = std::stoi(key.substr(base.size())) - 1;
    if (color < 0) return false;
  }
  return true;
}

}  // namespace

problem_spec parse_problem_args(const std::vector<std::string>& tokens) {
  problem_spec spec;
  bool edges = false;
  std::vector<std::pair<std::string, std::string>> kvs;
  for (const auto& tok : tokens) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw spec_invalid_error("expected key=value, got '" + tok + "'");
    kvs.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    if (kvs.back().first == "mode" && kvs.back().second == "edges") edges = true;
  }
  spec.mode = edges ? color_mode::edges : color_mode::points;

  for (const auto& [key, value] : kvs) {
    std::string base;
    int color = 0;
    if (!split_key(key, base, color)) throw spec_invalid_error("bad key '" + key + "'");
    constraint ct;
    ct.color = color;
    if (base == "n") {
      spec.n = std::stoi(value);
      continue;
    } else if (base == "sb") {
      spec.symmetry_breaking = (value != "off" && value != "0");
      continue;
    } else if (base == "mode") {
      continue;
    } else if (base == "hexmode") {
      spec.hexagon_relaxation = (value == "exact") ? hex_mode::exact : hex_mode::base_triangle;
      continue;
    } else if (base == "pr") {
      ct.kind = structure_kind::pair_;
      ct.limit = 0;
    } else if (base == "tr" || base == "rtr") {
      ct.kind = (edges || base == "rtr") ? structure_kind::ramsey_triangle : structure_kind::triangle;
      ct.limit = parse_limit(value);
    } else if (base == "cv" || base == "cv4") {
      ct.kind = edges ? structure_kind::ramsey_convex4 : structure_kind::convex4;
      ct.limit = parse_limit(value);
    } else if (base == "rcv4") {
      ct.kind = structure_kind::ramsey_convex4;
      ct.limit = parse_limit(value);
    } else if (base == "cv5") {
      ct.kind = edges ? structure_kind::ramsey_convex5 : structure_kind::convex5;
      ct.limit = parse_limit(value);
    } else if (base == "rcv5") {
      ct.kind = structure_kind::ramsey_convex5;
      ct.limit = parse_limit(value);
    } else if (base == "nc") {
      ct.kind = structure_kind::nonconvex4;
      ct.limit = parse_limit(value);
    } else if (base == "is") {
      ct.kind = structure_kind::island4;
      ct.limit = parse_limit(value);
    } else if (base == "hex") {
      ct.kind = structure_kind::hexagon;
      ct.limit = parse_limit(value);
    } else if (base == "hexsub") {
      ct.kind = structure_kind::hex_sub;
      ct.interior_set = {0, std::stoi(value)};
    } else if (base == "hexex") {
      ct.kind = structure_kind::hex_ex;
      ct.interior_set = parse_int_list(value);
      std::sort(ct.interior_set.begin(), ct.interior_set.end());
    } else {
      throw spec_invalid_error("unknown parameter '" + key + "'");
    }
    if (edges && !kind_is_edge_colored(ct.kind))
      throw spec_invalid_error("parameter '" + key + "' is not an edge-colored constraint");
    spec.constraints.push_back(ct);
  }

  // Compact color ids to 0..c-1 preserving order of first use.
  std::vector<int> ids;
  for (auto& ct : spec.constraints)
    if (std::find(ids.begin(), ids.end(), ct.color) == ids.end()) ids.push_back(ct.color);
  std::sort(ids.begin(), ids.end());
  for (auto& ct : spec.constraints)
    ct.color = static_cast<int>(std::find(ids.begin(), ids.end(), ct.color) - ids.begin());

  spec.validate();
  return spec;
}

std::string describe(const problem_spec& spec) {
  std::ostringstream os;
  os << "n=" << spec.n << (spec.mode == color_mode::edges ? " edges" : " points");
  for (const auto& ct : spec.constraints) {
    os << " " << kind_name(ct.kind) << "[c" << ct.color;
    if (ct.kind == structure_kind::hex_ex || ct.kind == structure_kind::hex_sub) {
      os << ",Q={";
      for (size_t i = 0; i < ct.interior_set.size(); ++i)
        os << (i ? "," : "") << ct.interior_set[i];
      os << "}";
    } else if (ct.limit == no_limit) {
      os << ",k=inf";
    } else {
      os << ",k=" << ct.limit;
    }
    os << "]";
  }
  if (!spec.symmetry_breaking) os << " sb=off";
  return os.str();
}

}  // namespace esk
