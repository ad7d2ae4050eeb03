#pragma once

#include <random>
#include <vector>

#include "esk/geometry.hpp"
#include "esk/signotope.hpp"

namespace esk::test {

inline point_set make_points(std::initializer_list<std::tuple<long, long, int>> pts) {
  point_set ps;
  for (auto& [x, y, c] : pts) ps.pts.push_back({bigint(x), bigint(y), c});
  return ps;
}

inline point_set make_points(std::initializer_list<std::pair<long, long>> pts) {
  point_set ps;
  for (auto& [x, y] : pts) ps.pts.push_back({bigint(x), bigint(y), -1});
  return ps;
}

// Deterministic random point set in general position with distinct x,
// coordinates in [-box, box]. Colors drawn uniformly when num_colors > 0.
inline point_set random_point_set(int n, std::mt19937& rng, int num_colors = 0, long box = 1000) {
  std::uniform_int_distribution<long> dist(-box, box);
  point_set ps;
  while (ps.n() < n) {
    point p{bigint(dist(rng)), bigint(dist(rng)), -1};
    bool ok = true;
    for (int i = 0; i < ps.n() && ok; ++i) {
      if (ps[i].x == p.x) ok = false;
      for (int j = i + 1; j < ps.n() && ok; ++j)
        if (orient(ps[i], ps[j], p) == 0) ok = false;
    }
    if (ok) ps.pts.push_back(std::move(p));
  }
  std::sort(ps.pts.begin(), ps.pts.end(), [](const point& a, const point& b) { return a.x < b.x; });
  if (num_colors > 0) {
    std::uniform_int_distribution<int> cd(0, num_colors - 1);
    for (auto& p : ps.pts) p.color = cd(rng);
  }
  return ps;
}

inline edge_coloring random_edge_coloring(int n, std::mt19937& rng, int num_colors) {
  edge_coloring ec(n);
  std::uniform_int_distribution<int> cd(0, num_colors - 1);
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) ec.set(a, b, cd(rng));
  return ec;
}

}  // namespace esk::test
