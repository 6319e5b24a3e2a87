#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace d1lc {

using NodeId = std::uint32_t;
using Color = std::uint64_t;

/// Simple undirected graph in compressed adjacency form. Neighbor lists are
/// sorted ascending, symmetric, and free of self-loops and duplicates.
class Graph {
 public:
  Graph() = default;

  /// Builds from an undirected edge list. Repeated edges (in either
  /// orientation) are merged; self-loops throw SelfLoop.
  static Graph from_edges(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges);

  /// Builds from explicit adjacency lists, which must already be symmetric
  /// (NonSymmetricEdge otherwise).
  static Graph from_adjacency(const std::vector<std::vector<NodeId>>& adjacency);

  std::size_t node_count() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const noexcept {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const noexcept;
  bool adjacent(NodeId u, NodeId v) const noexcept;

  /// Subgraph induced on `nodes` (sorted, distinct). Node i of the result is
  /// nodes[i].
  Graph induced(std::span<const NodeId> nodes) const;

  /// Number of common neighbors of u and v.
  std::size_t common_neighbors(NodeId u, NodeId v) const noexcept;

  /// Nodes within `radius` hops of `source` (including it), in BFS order.
  std::vector<NodeId> ball(NodeId source, std::size_t radius) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> adjacency_;
};

}  // namespace d1lc
