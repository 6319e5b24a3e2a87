#pragma once

#include "d1lc/instance.hpp"

#include <cstdint>
#include <string>

namespace d1lc {

enum class GraphKind { Gnp, PlantedCliques, Hypercube, StarForest };

struct GenerateParams {
  GraphKind kind = GraphKind::Gnp;
  std::uint64_t seed = 1;
  std::size_t n = 256;        // Gnp: nodes; PlantedCliques: filler nodes added to the cliques
  double p = 0.0;             // Gnp edge probability; PlantedCliques: noise between all nodes
  std::size_t clique_size = 8;
  std::size_t cliques = 4;
  unsigned dimension = 6;     // Hypercube
  std::size_t stars = 4;      // StarForest
  std::size_t leaves = 8;
  bool random_palettes = false;  // drawn from [0, n^2) instead of [0, d(v)]
  std::size_t extra_colors = 0;  // palette size d(v) + 1 + extra_colors
};

GraphKind parse_graph_kind(const std::string& name);
std::string graph_kind_name(GraphKind kind);

/// Same parameters, same instance.
D1LCInstance generate(const GenerateParams& params);

}  // namespace d1lc
