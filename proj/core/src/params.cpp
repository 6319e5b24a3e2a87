#include "d1lc/params.hpp"

#include <algorithm>

namespace d1lc {

std::int64_t compute_slack(const D1LCInstance& inst, const ColoringState& st, NodeId v) {
  auto p = static_cast<std::int64_t>(residual_palette(inst, st, v).size());
  auto d = static_cast<std::int64_t>(residual_degree(inst, st, v));
  return p - d;
}

std::size_t neighborhood_edges(const Graph& g, NodeId v) {
  std::size_t twice = 0;
  for (NodeId u : g.neighbors(v)) twice += g.common_neighbors(u, v);
  return twice / 2;
}

Rational compute_sparsity(const D1LCInstance& inst, NodeId v) {
  const std::size_t d = inst.degree(v);
  if (d == 0) return 0;
  const std::size_t pairs = d * (d - 1) / 2;
  Rational q(mpz_class(static_cast<unsigned long>(pairs - neighborhood_edges(inst.graph, v))),
             mpz_class(static_cast<unsigned long>(d)));
  q.canonicalize();
  return q;
}

Rational compute_disparity(const D1LCInstance& inst, NodeId u, NodeId v) {
  const auto& pu = inst.palette(u);
  const auto& pv = inst.palette(v);
  std::size_t common = 0;
  auto a = pu.begin();
  auto b = pv.begin();
  while (a != pu.end() && b != pv.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++common;
      ++a;
      ++b;
    }
  }
  Rational q(mpz_class(static_cast<unsigned long>(pu.size() - common)),
             mpz_class(static_cast<unsigned long>(pu.size())));
  q.canonicalize();
  return q;
}

Rational compute_discrepancy(const D1LCInstance& inst, NodeId v) {
  Rational sum = 0;
  for (NodeId u : inst.graph.neighbors(v)) sum += compute_disparity(inst, u, v);
  return sum;
}

Rational compute_unevenness(const D1LCInstance& inst, NodeId v) {
  Rational sum = 0;
  const std::size_t dv = inst.degree(v);
  for (NodeId u : inst.graph.neighbors(v)) {
    const std::size_t du = inst.degree(u);
    if (du > dv) {
      Rational term(mpz_class(static_cast<unsigned long>(du - dv)), mpz_class(static_cast<unsigned long>(du + 1)));
      term.canonicalize();
      sum += term;
    }
  }
  return sum;
}

std::pair<Rational, Rational> compute_slackability(const D1LCInstance& inst, NodeId v) {
  Rational spars = compute_sparsity(inst, v);
  return {compute_discrepancy(inst, v) + spars, compute_unevenness(inst, v) + spars};
}

NodeParams compute_params(const D1LCInstance& inst, NodeId v) {
  NodeParams p;
  p.slack = static_cast<std::int64_t>(inst.palette(v).size()) - static_cast<std::int64_t>(inst.degree(v));
  p.sparsity = compute_sparsity(inst, v);
  p.discrepancy = compute_discrepancy(inst, v);
  p.unevenness = compute_unevenness(inst, v);
  p.slackability = p.discrepancy + p.sparsity;
  p.strong_slackability = p.unevenness + p.sparsity;
  return p;
}

}  // namespace d1lc
