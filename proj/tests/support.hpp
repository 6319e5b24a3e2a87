#pragma once

#include "d1lc/instance.hpp"

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace d1lc::testing {

using Edges = std::vector<std::pair<NodeId, NodeId>>;

inline D1LCInstance make_instance(std::size_t n, const Edges& edges, std::vector<Palette> palettes = {}) {
  Graph g = Graph::from_edges(n, edges);
  if (palettes.empty()) {
    palettes.resize(n);
    for (NodeId v = 0; v < n; ++v) palettes[v] = Palette::range(g.degree(v) + 1);
  }
  return D1LCInstance::create(std::move(g), std::move(palettes));
}

inline Edges clique_edges(const std::vector<NodeId>& nodes) {
  Edges e;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) e.emplace_back(nodes[i], nodes[j]);
  return e;
}

inline Edges path_edges(std::size_t n) {
  Edges e;
  for (NodeId v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return e;
}

inline Edges star_edges(std::size_t leaves) {
  Edges e;
  for (NodeId l = 1; l <= leaves; ++l) e.emplace_back(0, l);
  return e;
}

/// Small random instances for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng_); }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  std::mt19937_64& rng() { return rng_; }

  Edges edges(std::size_t n, double p) {
    Edges e;
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (coin(p)) e.emplace_back(u, v);
    return e;
  }

  /// Palettes of size d(v) + 1 + [0, extra] drawn from [0, universe).
  D1LCInstance instance(std::size_t n, double p, std::size_t extra = 2, std::uint64_t universe = 0) {
    Graph g = Graph::from_edges(n, edges(n, p));
    std::vector<Palette> pal(n);
    for (NodeId v = 0; v < n; ++v) {
      const std::size_t size = g.degree(v) + 1 + below(extra + 1);
      const std::uint64_t u = std::max<std::uint64_t>(universe ? universe : 2 * size + 2, size);
      std::set<Color> cs;
      while (cs.size() < size) cs.insert(below(u));
      pal[v] = Palette(std::vector<Color>(cs.begin(), cs.end()));
    }
    return D1LCInstance::create(std::move(g), std::move(pal));
  }

  /// Proper, palette-respecting partial coloring: each node, in random
  /// order, is colored with probability p using a random free color.
  ColoringState partial_coloring(const D1LCInstance& inst, double p) {
    ColoringState st(inst.node_count());
    std::vector<NodeId> order(inst.node_count());
    for (NodeId v = 0; v < order.size(); ++v) order[v] = v;
    std::shuffle(order.begin(), order.end(), rng_);
    for (NodeId v : order) {
      if (!coin(p)) continue;
      std::vector<Color> free;
      for (Color c : inst.palette(v)) {
        bool used = false;
        for (NodeId u : inst.graph.neighbors(v)) used |= st.colored(u) && st.color(u) == c;
        if (!used) free.push_back(c);
      }
      if (!free.empty()) st.set_color(v, free[below(free.size())]);
    }
    return st;
  }

 private:
  std::mt19937_64 rng_;
};

/// Independent verifier: every node colored from its palette, no
/// monochromatic edge.
inline bool brute_valid(const D1LCInstance& inst, const ColoringState& st) {
  if (st.size() != inst.node_count()) return false;
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    if (!st.colored(v)) return false;
    const auto cs = inst.palette(v).colors();
    if (std::find(cs.begin(), cs.end(), st.color(v)) == cs.end()) return false;
    for (NodeId u = 0; u < inst.node_count(); ++u)
      if (u != v && inst.graph.adjacent(u, v) && st.colored(u) && st.color(u) == st.color(v)) return false;
  }
  return true;
}

/// Colored nodes are proper and palette-respecting.
inline bool brute_partial_valid(const D1LCInstance& inst, const ColoringState& st) {
  for (NodeId v = 0; v < inst.node_count(); ++v) {
    if (!st.colored(v)) continue;
    const auto cs = inst.palette(v).colors();
    if (std::find(cs.begin(), cs.end(), st.color(v)) == cs.end()) return false;
    for (NodeId u : inst.graph.neighbors(v))
      if (st.colored(u) && st.color(u) == st.color(v)) return false;
  }
  return true;
}

inline bool d1lc_guarantee(const D1LCInstance& inst) {
  for (NodeId v = 0; v < inst.node_count(); ++v)
    if (inst.palette(v).size() < inst.degree(v) + 1) return false;
  return true;
}

}  // namespace d1lc::testing
