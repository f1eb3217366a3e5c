#pragma once

// Spaces and sequences shared by the unit tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "seqends/metric.hpp"
#include "seqends/sequences.hpp"

namespace fixtures {

using seqends::CoarseSequencePrefix;
using seqends::SamplePtr;

inline SamplePtr make_space(seqends::SpaceFamily family, double window, double resolution = 1.0,
                            std::size_t dimension = 2, std::size_t circles = 0) {
  seqends::SpaceSpec spec;
  spec.family = family;
  spec.window_radius = window;
  spec.resolution = resolution;
  spec.dimension = family == seqends::SpaceFamily::line ? 1 : dimension;
  spec.circle_count = circles;
  return seqends::share(seqends::generate_space(spec));
}

inline SamplePtr line(double window, double resolution = 1.0) {
  return make_space(seqends::SpaceFamily::line, window, resolution);
}
inline SamplePtr grid(std::size_t dim, double window, double resolution = 1.0) {
  return make_space(seqends::SpaceFamily::euclidean_n, window, resolution, dim);
}
inline SamplePtr t_shape(double window) { return make_space(seqends::SpaceFamily::t_shape, window); }
inline SamplePtr circles(double window, std::size_t count) {
  return make_space(seqends::SpaceFamily::tangent_circles, window, 1.0, 2, count);
}
inline SamplePtr comb(double window) { return make_space(seqends::SpaceFamily::comb, window); }

inline seqends::PointId at(const SamplePtr& sample, std::vector<double> coords) {
  if (auto id = sample->find(coords)) return *id;
  throw std::runtime_error("fixture point missing from the sample");
}

/// Looks up each point, stopping at the first one outside the sample.
inline CoarseSequencePrefix walk(const SamplePtr& sample, const std::vector<std::vector<double>>& points,
                                 bool based = true) {
  std::vector<seqends::PointId> ids;
  for (const auto& p : points) {
    const auto id = sample->find(p);
    if (!id) break;
    ids.push_back(*id);
  }
  return CoarseSequencePrefix::make(sample, std::move(ids), based);
}

/// x0, x0 + step, x0 + 2 step, ... on the line.
inline CoarseSequencePrefix line_ray(const SamplePtr& sample, double step) {
  std::vector<std::vector<double>> pts;
  for (int k = 0; std::abs(k * step) <= sample->window_radius(); ++k) pts.push_back({k * step});
  return walk(sample, pts);
}

/// Along the bar from (0,1) to (side,1), then up the ray x = side.
inline CoarseSequencePrefix t_ray(const SamplePtr& sample, double side) {
  std::vector<std::vector<double>> pts{{0.0, 1.0}};
  for (int y = 1; y <= static_cast<int>(sample->window_radius()) + 1; ++y) pts.push_back({side, double(y)});
  return walk(sample, pts);
}

/// Arc-length parametrized climb over the tangent circles, keeping to the
/// right (side = +1) or left (side = -1) half of each circle.
inline seqends::RaySampler circle_climb(double side) {
  return [side](double tau) {
    double start = 0.0;
    for (int n = 0;; ++n) {
      const double r = std::ldexp(1.0, n);
      const double half = std::numbers::pi * r;
      if (tau <= start + half || n > 40) {
        const double theta = -std::numbers::pi / 2 + (tau - start) / r;
        return std::vector<double>{side * r * std::cos(theta), 3 * r + r * std::sin(theta)};
      }
      start += half;
    }
  };
}

/// Sample points on one side of the circles, ordered bottom to top circle by
/// circle. Points on the axis belong to both sides.
inline CoarseSequencePrefix circle_side_points(const SamplePtr& sample, double side) {
  struct Key {
    int circle;
    double angle;
    seqends::PointId id;
  };
  std::vector<Key> keys;
  for (seqends::PointId i = 0; i < sample->size(); ++i) {
    const auto c = sample->coords(i);
    if (side * c[0] < -1e-9) continue;
    // Circle n spans heights [2^(n+1), 2^(n+2)]; tangency points go to the lower circle.
    int n = 0;
    while (c[1] > std::ldexp(4.0, n) + 1e-9) ++n;
    const double r = std::ldexp(1.0, n);
    keys.push_back({n, std::atan2(c[1] - 3 * r, side * c[0]), i});
  }
  std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    return a.circle != b.circle ? a.circle < b.circle : a.angle < b.angle;
  });
  std::vector<seqends::PointId> ids;
  for (const auto& k : keys) {
    if (ids.empty() || ids.back() != k.id) ids.push_back(k.id);
  }
  return CoarseSequencePrefix::make(sample, std::move(ids));
}

/// Comb fixtures from the basepoint (0,1): up the spine, or along the bottom
/// tooth to the right (+1) or left (-1).
inline CoarseSequencePrefix comb_spine(const SamplePtr& sample) {
  std::vector<std::vector<double>> pts;
  for (int y = 1; y <= static_cast<int>(sample->window_radius()) + 1; ++y) pts.push_back({0.0, double(y)});
  return walk(sample, pts);
}
inline CoarseSequencePrefix comb_tooth(const SamplePtr& sample, double side) {
  std::vector<std::vector<double>> pts;
  for (int x = 0; x <= static_cast<int>(sample->window_radius()); ++x) pts.push_back({side * x, 1.0});
  return walk(sample, pts);
}

}  // namespace fixtures
