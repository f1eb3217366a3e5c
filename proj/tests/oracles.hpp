#pragma once

// Reference implementations used to derive expected values. They share no
// code with the library beyond the sample container: distances are recomputed
// from raw coordinates and components come from BFS over an explicit adjacency
// matrix of the threshold graph.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <functional>
#include <vector>

#include "seqends/metric.hpp"

namespace oracle {

using Coords = std::vector<double>;
using Groups = std::vector<std::vector<std::size_t>>;

inline double euclidean(const Coords& a, const Coords& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(acc);
}

inline double chebyshev(const Coords& a, const Coords& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline std::function<double(const Coords&, const Coords&)> metric_for(seqends::MetricKind kind) {
  if (kind == seqends::MetricKind::max) return chebyshev;
  return euclidean;
}

inline std::vector<Coords> raw_points(const seqends::MetricSpaceSample& sample) {
  std::vector<Coords> pts;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const auto c = sample.coords(i);
    pts.emplace_back(c.begin(), c.end());
  }
  return pts;
}

/// Components of the threshold graph {d <= K} on `ids`, as sorted member
/// lists ordered by their smallest member.
inline Groups bfs_components(const std::vector<Coords>& pts, const std::vector<std::size_t>& ids, double K,
                             const std::function<double(const Coords&, const Coords&)>& dist) {
  const std::size_t n = ids.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      adj[i][j] = i != j && dist(pts[ids[i]], pts[ids[j]]) <= K + 1e-9;

  std::vector<int> label(n, -1);
  Groups groups;
  for (std::size_t start = 0; start < n; ++start) {
    if (label[start] >= 0) continue;
    const int g = static_cast<int>(groups.size());
    groups.emplace_back();
    std::deque<std::size_t> queue{start};
    label[start] = g;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      groups.back().push_back(ids[v]);
      for (std::size_t w = 0; w < n; ++w) {
        if (adj[v][w] && label[w] < 0) {
          label[w] = g;
          queue.push_back(w);
        }
      }
    }
  }
  for (auto& g : groups) std::sort(g.begin(), g.end());
  std::sort(groups.begin(), groups.end());
  return groups;
}

/// Hop count of a shortest path from a to b in the threshold graph on `ids`,
/// or -1 when there is none.
inline int bfs_hops(const std::vector<Coords>& pts, const std::vector<std::size_t>& ids, double K, std::size_t a,
                    std::size_t b, const std::function<double(const Coords&, const Coords&)>& dist) {
  std::vector<int> hops(pts.size(), -1);
  std::vector<char> member(pts.size(), 0);
  for (auto id : ids) member[id] = 1;
  if (!member[a] || !member[b]) return -1;
  std::deque<std::size_t> queue{a};
  hops[a] = 0;
  while (!queue.empty()) {
    const auto v = queue.front();
    queue.pop_front();
    if (v == b) return hops[v];
    for (auto w : ids) {
      if (hops[w] < 0 && dist(pts[v], pts[w]) <= K + 1e-9) {
        hops[w] = hops[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return -1;
}

/// Points strictly farther than R from the basepoint.
inline std::vector<std::size_t> outside_ball(const std::vector<Coords>& pts, std::size_t base, double R,
                                             const std::function<double(const Coords&, const Coords&)>& dist) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (dist(pts[base], pts[i]) > R + 1e-9) ids.push_back(i);
  }
  return ids;
}

/// Components of the complement of B(x0, R) whose farthest member reaches
/// within `margin` of the window edge.
inline int live_components(const seqends::MetricSpaceSample& sample, double K, double R, double margin) {
  const auto pts = raw_points(sample);
  const auto dist = metric_for(sample.metric_kind());
  const auto base = sample.basepoint();
  int live = 0;
  for (const auto& g : bfs_components(pts, outside_ball(pts, base, R, dist), K, dist)) {
    double reach = 0.0;
    for (auto id : g) reach = std::max(reach, dist(pts[base], pts[id]));
    if (reach >= sample.window_radius() - margin - 1e-9) ++live;
  }
  return live;
}

/// Two-pointer test that `sub` occurs in order inside `super`.
inline bool embeds(const std::vector<std::size_t>& sub, const std::vector<std::size_t>& super) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < super.size() && k < sub.size(); ++i) {
    if (super[i] == sub[k]) ++k;
  }
  return k == sub.size();
}

inline double max_step(const std::vector<Coords>& pts, const std::vector<std::size_t>& terms,
                       const std::function<double(const Coords&, const Coords&)>& dist) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) m = std::max(m, dist(pts[terms[i]], pts[terms[i + 1]]));
  return m;
}

}  // namespace oracle
