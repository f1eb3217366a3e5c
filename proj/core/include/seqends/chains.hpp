#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "seqends/metric.hpp"

namespace seqends {

struct ChainComponent {
  int id = 0;
  std::vector<PointId> members;  // ascending
  PointId representative = 0;    // smallest member
};

/// Partition of a point subset into K-chain components. Component ids run
/// 0..count-1 in ascending order of representative.
struct ChainPartition {
  double K = 0.0;
  std::vector<PointId> point_ids;    // ascending, unique
  std::vector<int> component_index;  // parallel to point_ids
  std::vector<ChainComponent> components;

  std::size_t count() const { return components.size(); }
  std::optional<int> component_of(PointId id) const;
  bool contains(PointId id) const { return component_of(id).has_value(); }
};

struct KChain {
  double K = 0.0;
  std::vector<PointId> points;
};

/// True when consecutive members are within K (with tolerance).
bool is_valid_chain(const MetricSpaceSample& sample, const KChain& chain);

enum class Pruning {
  grid,  // uniform grid of cell size K, 3^d neighbourhood (coordinate metrics only)
  none,  // all pairs
};

/// Calls `visit(a, b)` once for every unordered pair a < b of the subset with
/// dist(a, b) <= K. Pair order is unspecified.
void for_each_close_pair(const MetricSpaceSample& sample, std::span<const PointId> subset, double K,
                         const std::function<void(PointId, PointId)>& visit, Pruning pruning = Pruning::grid);

ChainPartition k_chain_components(const MetricSpaceSample& sample, std::span<const PointId> subset, double K,
                                  Pruning pruning = Pruning::grid);

/// Hop-minimal K-chain from `a` to `b` inside `subset`; at each step the
/// smallest admissible next id is taken. Empty optional when no chain exists.
std::optional<KChain> k_chain_path(const MetricSpaceSample& sample, std::span<const PointId> subset, double K,
                                   PointId a, PointId b, Pruning pruning = Pruning::grid);

}  // namespace seqends
