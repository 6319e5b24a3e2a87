#include "d1lc/generate.hpp"

#include "d1lc/error.hpp"

#include <algorithm>
#include <random>
#include <unordered_set>
#include <utility>
#include <vector>

namespace d1lc {

namespace {

using Edges = std::vector<std::pair<NodeId, NodeId>>;

// Skips ahead geometrically so sparse graphs cost O(n + m).
void add_gnp(Edges& edges, std::size_t n, double p, std::mt19937_64& rng) {
  if (p <= 0.0 || n < 2) return;
  if (p >= 1.0) {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
    return;
  }
  std::geometric_distribution<std::uint64_t> skip(p);
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  std::uint64_t idx = skip(rng);
  NodeId u = 0;
  std::uint64_t row_start = 0;  // pair index of (u, u+1)
  while (idx < total) {
    while (idx >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    edges.emplace_back(u, u + 1 + (idx - row_start));
    idx += 1 + skip(rng);
  }
}

}  // namespace

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "gnp") return GraphKind::Gnp;
  if (name == "planted" || name == "planted-cliques") return GraphKind::PlantedCliques;
  if (name == "hypercube") return GraphKind::Hypercube;
  if (name == "star-forest" || name == "stars") return GraphKind::StarForest;
  throw Error(Errc::BadConfig, "unknown graph kind '" + name + "'");
}

std::string graph_kind_name(GraphKind kind) {
  switch (kind) {
    case GraphKind::Gnp: return "gnp";
    case GraphKind::PlantedCliques: return "planted";
    case GraphKind::Hypercube: return "hypercube";
    case GraphKind::StarForest: return "star-forest";
  }
  return "gnp";
}

D1LCInstance generate(const GenerateParams& params) {
  std::mt19937_64 rng(params.seed);
  Edges edges;
  std::size_t n = 0;
  switch (params.kind) {
    case GraphKind::Gnp:
      n = params.n;
      add_gnp(edges, n, params.p, rng);
      break;
    case GraphKind::PlantedCliques: {
      const std::size_t k = params.clique_size;
      n = params.cliques * k + params.n;
      // Clique members are scattered over the id space.
      std::vector<NodeId> ids(n);
      for (NodeId v = 0; v < n; ++v) ids[v] = v;
      std::shuffle(ids.begin(), ids.end(), rng);
      for (std::size_t c = 0; c < params.cliques; ++c)
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = i + 1; j < k; ++j) edges.emplace_back(ids[c * k + i], ids[c * k + j]);
      add_gnp(edges, n, params.p, rng);
      break;
    }
    case GraphKind::Hypercube:
      if (params.dimension > 24) throw Error(Errc::BadConfig, "hypercube dimension above 24");
      n = std::size_t{1} << params.dimension;
      for (NodeId v = 0; v < n; ++v)
        for (unsigned b = 0; b < params.dimension; ++b) {
          const NodeId u = v ^ (NodeId{1} << b);
          if (u > v) edges.emplace_back(v, u);
        }
      break;
    case GraphKind::StarForest:
      n = params.stars * (params.leaves + 1);
      for (std::size_t s = 0; s < params.stars; ++s) {
        const NodeId center = s * (params.leaves + 1);
        for (std::size_t l = 1; l <= params.leaves; ++l) edges.emplace_back(center, center + l);
      }
      break;
  }
  Graph g = Graph::from_edges(n, edges);
  std::vector<Palette> palettes(n);
  const std::uint64_t universe = static_cast<std::uint64_t>(n) * n;
  for (NodeId v = 0; v < n; ++v) {
    const std::size_t size = g.degree(v) + 1 + params.extra_colors;
    if (!params.random_palettes || size >= universe) {
      palettes[v] = Palette::range(size);
      continue;
    }
    std::uniform_int_distribution<std::uint64_t> pick(0, universe - 1);
    std::unordered_set<Color> seen;
    std::vector<Color> colors;
    while (colors.size() < size) {
      const Color c = pick(rng);
      if (seen.insert(c).second) colors.push_back(c);
    }
    palettes[v] = Palette(std::move(colors));
  }
  return D1LCInstance::create(std::move(g), std::move(palettes));
}

}  // namespace d1lc
