#include "d1lc/graph.hpp"

#include "d1lc/error.hpp"

#include <algorithm>
#include <string>

namespace d1lc {

Graph Graph::from_edges(std::size_t node_count, std::span<const std::pair<NodeId, NodeId>> edges) {
  std::vector<std::size_t> deg(node_count + 1, 0);
  for (auto [u, v] : edges) {
    if (u >= node_count || v >= node_count) {
      throw Error(Errc::Parse, "edge endpoint out of range: " + std::to_string(std::max(u, v)));
    }
    if (u == v) throw Error(Errc::SelfLoop, "self-loop at node " + std::to_string(u), u);
    ++deg[u];
    ++deg[v];
  }
  Graph g;
  g.offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[v];
  g.adjacency_.resize(g.offsets_[node_count]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (auto [u, v] : edges) {
    g.adjacency_[fill[u]++] = v;
    g.adjacency_[fill[v]++] = u;
  }
  // Sort and drop repeated edges, then compact.
  std::vector<std::size_t> offsets(node_count + 1, 0);
  std::size_t out = 0;
  for (std::size_t v = 0; v < node_count; ++v) {
    auto first = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.adjacency_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    auto unique_end = std::unique(first, last);
    offsets[v] = out;
    for (auto it = first; it != unique_end; ++it) g.adjacency_[out++] = *it;
  }
  offsets[node_count] = out;
  g.adjacency_.resize(out);
  g.offsets_ = std::move(offsets);
  return g;
}

Graph Graph::from_adjacency(const std::vector<std::vector<NodeId>>& adjacency) {
  const std::size_t n = adjacency.size();
  std::vector<std::vector<NodeId>> sorted(adjacency);
  for (std::size_t v = 0; v < n; ++v) {
    auto& list = sorted[v];
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    for (NodeId u : list) {
      if (u >= n) throw Error(Errc::Parse, "neighbor out of range: " + std::to_string(u), v);
      if (u == v) throw Error(Errc::SelfLoop, "self-loop at node " + std::to_string(v), v);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (NodeId u : sorted[v]) {
      if (!std::binary_search(sorted[u].begin(), sorted[u].end(), static_cast<NodeId>(v))) {
        throw Error(Errc::NonSymmetricEdge,
                    "edge " + std::to_string(v) + "->" + std::to_string(u) + " has no reverse", v);
      }
    }
  }
  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + sorted[v].size();
  g.adjacency_.reserve(g.offsets_[n]);
  for (const auto& list : sorted) g.adjacency_.insert(g.adjacency_.end(), list.begin(), list.end());
  return g;
}

std::size_t Graph::max_degree() const noexcept {
  std::size_t best = 0;
  for (std::size_t v = 0; v < node_count(); ++v) best = std::max(best, degree(static_cast<NodeId>(v)));
  return best;
}

bool Graph::adjacent(NodeId u, NodeId v) const noexcept {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

Graph Graph::induced(std::span<const NodeId> nodes) const {
  std::vector<NodeId> index(node_count(), static_cast<NodeId>(-1));
  for (std::size_t i = 0; i < nodes.size(); ++i) index[nodes[i]] = static_cast<NodeId>(i);
  Graph g;
  g.offsets_.assign(nodes.size() + 1, 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (NodeId u : neighbors(nodes[i])) {
      if (index[u] != static_cast<NodeId>(-1)) g.adjacency_.push_back(index[u]);
    }
    g.offsets_[i + 1] = g.adjacency_.size();
  }
  // `nodes` is sorted, so mapped neighbor lists stay sorted.
  return g;
}

std::size_t Graph::common_neighbors(NodeId u, NodeId v) const noexcept {
  auto a = neighbors(u);
  auto b = neighbors(v);
  std::size_t i = 0, j = 0, count = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

std::vector<NodeId> Graph::ball(NodeId source, std::size_t radius) const {
  std::vector<NodeId> order{source};
  std::vector<std::uint32_t> dist(node_count(), static_cast<std::uint32_t>(-1));
  dist[source] = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeId x = order[head];
    if (dist[x] == radius) continue;
    for (NodeId y : neighbors(x)) {
      if (dist[y] == static_cast<std::uint32_t>(-1)) {
        dist[y] = dist[x] + 1;
        order.push_back(y);
      }
    }
  }
  return order;
}

}  // namespace d1lc
