#include "seqends/chains.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "seqends/error.hpp"
#include "seqends/union_find.hpp"

namespace seqends {

std::optional<int> ChainPartition::component_of(PointId id) const {
  const auto it = std::lower_bound(point_ids.begin(), point_ids.end(), id);
  if (it == point_ids.end() || *it != id) return std::nullopt;
  return component_index[static_cast<std::size_t>(it - point_ids.begin())];
}

bool is_valid_chain(const MetricSpaceSample& sample, const KChain& chain) {
  if (chain.points.empty()) return false;
  for (auto id : chain.points) {
    if (id >= sample.size()) return false;
  }
  for (std::size_t i = 0; i + 1 < chain.points.size(); ++i) {
    if (!within(sample.distance(chain.points[i], chain.points[i + 1]), chain.K)) return false;
  }
  return true;
}

namespace {

std::vector<PointId> normalized_subset(const MetricSpaceSample& sample, std::span<const PointId> subset) {
  std::vector<PointId> ids(subset.begin(), subset.end());
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  if (!ids.empty() && ids.back() >= sample.size()) {
    throw PreconditionError("subset contains id " + std::to_string(ids.back()) + " outside the sample");
  }
  return ids;
}

void check_k(double K) {
  if (!(K > 0.0) || !std::isfinite(K)) throw PreconditionError("K must be positive");
}

struct CellHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (auto v : key) {
      h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return static_cast<std::size_t>(h);
  }
};

bool grid_applicable(const MetricSpaceSample& sample, std::span<const PointId> ids, double K) {
  if (sample.metric_kind() == MetricKind::explicit_matrix || !sample.has_coordinates()) return false;
  // 3^d neighbour cells must stay cheaper than scanning all points.
  double cells = 1.0;
  for (std::size_t i = 0; i < sample.dimension(); ++i) cells *= 3.0;
  if (cells > static_cast<double>(ids.size())) return false;
  for (auto id : ids) {
    for (double c : sample.coords(id)) {
      if (std::abs(c / K) > 1e15) return false;
    }
  }
  return true;
}

// Local indices i < j into `ids` with dist <= K.
template <typename Visit>
void close_pairs(const MetricSpaceSample& sample, const std::vector<PointId>& ids, double K, Pruning pruning,
                 Visit&& visit) {
  const std::size_t n = ids.size();
  if (pruning == Pruning::none || !grid_applicable(sample, ids, K)) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (within(sample.distance(ids[i], ids[j]), K)) visit(i, j);
    return;
  }

  const std::size_t d = sample.dimension();
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, CellHash> cells;
  std::vector<std::vector<std::int64_t>> keys(n, std::vector<std::int64_t>(d));
  for (std::size_t i = 0; i < n; ++i) {
    const auto c = sample.coords(ids[i]);
    for (std::size_t a = 0; a < d; ++a) keys[i][a] = static_cast<std::int64_t>(std::floor(c[a] / K));
    cells[keys[i]].push_back(i);
  }

  std::vector<std::int64_t> probe(d);
  std::vector<int> offset(d);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(offset.begin(), offset.end(), -1);
    while (true) {
      for (std::size_t a = 0; a < d; ++a) probe[a] = keys[i][a] + offset[a];
      if (const auto it = cells.find(probe); it != cells.end()) {
        for (std::size_t j : it->second) {
          if (j > i && within(sample.distance(ids[i], ids[j]), K)) visit(i, j);
        }
      }
      std::size_t a = 0;
      while (a < d && ++offset[a] > 1) offset[a++] = -1;
      if (a == d) break;
    }
  }
}

}  // namespace

void for_each_close_pair(const MetricSpaceSample& sample, std::span<const PointId> subset, double K,
                         const std::function<void(PointId, PointId)>& visit, Pruning pruning) {
  check_k(K);
  const auto ids = normalized_subset(sample, subset);
  close_pairs(sample, ids, K, pruning, [&](std::size_t i, std::size_t j) { visit(ids[i], ids[j]); });
}

ChainPartition k_chain_components(const MetricSpaceSample& sample, std::span<const PointId> subset, double K,
                                  Pruning pruning) {
  check_k(K);
  ChainPartition partition;
  partition.K = K;
  partition.point_ids = normalized_subset(sample, subset);
  const std::size_t n = partition.point_ids.size();

  DisjointSet sets(n);
  close_pairs(sample, partition.point_ids, K, pruning, [&](std::size_t i, std::size_t j) { sets.unite(i, j); });

  // Ids are ascending, so the first time a root is seen its member is the
  // component's smallest id and numbering follows representatives.
  std::vector<int> root_to_component(n, -1);
  partition.component_index.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto root = sets.find(i);
    if (root_to_component[root] < 0) {
      root_to_component[root] = static_cast<int>(partition.components.size());
      ChainComponent comp;
      comp.id = root_to_component[root];
      comp.representative = partition.point_ids[i];
      partition.components.push_back(std::move(comp));
    }
    const int c = root_to_component[root];
    partition.component_index[i] = c;
    partition.components[static_cast<std::size_t>(c)].members.push_back(partition.point_ids[i]);
  }
  return partition;
}

std::optional<KChain> k_chain_path(const MetricSpaceSample& sample, std::span<const PointId> subset, double K,
                                   PointId a, PointId b, Pruning pruning) {
  check_k(K);
  const auto ids = normalized_subset(sample, subset);
  auto local = [&](PointId id) -> std::size_t {
    const auto it = std::lower_bound(ids.begin(), ids.end(), id);
    if (it == ids.end() || *it != id) {
      throw PreconditionError("chain endpoint " + std::to_string(id) + " is not in the subset");
    }
    return static_cast<std::size_t>(it - ids.begin());
  };
  const std::size_t from = local(a);
  const std::size_t to = local(b);
  if (from == to) return KChain{K, {a}};

  std::vector<std::vector<std::size_t>> adjacency(ids.size());
  close_pairs(sample, ids, K, pruning, [&](std::size_t i, std::size_t j) {
    adjacency[i].push_back(j);
    adjacency[j].push_back(i);
  });
  for (auto& nbrs : adjacency) std::sort(nbrs.begin(), nbrs.end());

  // Hop distances to the target, then a greedy walk from the source that
  // always takes the smallest neighbour one hop closer.
  constexpr auto kUnreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> hops(ids.size(), kUnreached);
  std::deque<std::size_t> queue{to};
  hops[to] = 0;
  while (!queue.empty() && hops[from] == kUnreached) {
    const auto v = queue.front();
    queue.pop_front();
    for (auto w : adjacency[v]) {
      if (hops[w] == kUnreached) {
        hops[w] = hops[v] + 1;
        queue.push_back(w);
      }
    }
  }
  if (hops[from] == kUnreached) return std::nullopt;

  KChain chain{K, {a}};
  std::size_t cur = from;
  while (cur != to) {
    for (auto w : adjacency[cur]) {
      if (hops[w] != kUnreached && hops[w] + 1 == hops[cur]) {
        cur = w;
        break;
      }
    }
    chain.points.push_back(ids[cur]);
  }
  return chain;
}

}  // namespace seqends
