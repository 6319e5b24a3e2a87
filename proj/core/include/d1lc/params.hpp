#pragma once

#include "d1lc/instance.hpp"
#include "d1lc/rational.hpp"

#include <cstdint>
#include <utility>

namespace d1lc {

struct NodeParams {
  std::int64_t slack = 0;
  Rational sparsity;
  Rational discrepancy;
  Rational unevenness;
  Rational slackability;
  Rational strong_slackability;
};

/// p(v) - d(v) on the residual instance: colors of Colored neighbors leave the
/// palette; Colored and Deferred neighbors leave the degree.
std::int64_t compute_slack(const D1LCInstance& inst, const ColoringState& st, NodeId v);

/// Edges inside N(v).
std::size_t neighborhood_edges(const Graph& g, NodeId v);

// The parameters below are evaluated on `inst` as given. Residual values come
// from evaluating them on reduce_instance(inst, coloring). Isolated nodes get 0.
Rational compute_sparsity(const D1LCInstance& inst, NodeId v);
Rational compute_disparity(const D1LCInstance& inst, NodeId u, NodeId v);
Rational compute_discrepancy(const D1LCInstance& inst, NodeId v);
Rational compute_unevenness(const D1LCInstance& inst, NodeId v);
/// (discrepancy + sparsity, unevenness + sparsity).
std::pair<Rational, Rational> compute_slackability(const D1LCInstance& inst, NodeId v);

NodeParams compute_params(const D1LCInstance& inst, NodeId v);

}  // namespace d1lc
