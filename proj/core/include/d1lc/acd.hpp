#pragma once

#include "d1lc/config.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace d1lc {

struct AcdParams {
  Rational eps_ac = make_rational(1, 3);
  Rational eps_sp = make_rational(1, 3);
  Rational eps_1 = make_rational(1, 100);
  Rational eps_2 = make_rational(1, 100);
  Rational eps_3 = make_rational(1, 100);
  Rational eps_4 = make_rational(1, 100);
  Rational eps_5 = make_rational(1, 100);
  Rational heavy_threshold = 1;
  /// Nodes of degree below this are left out of the decomposition (they are
  /// handled by the low-degree path and never reach the mid-degree code).
  std::uint64_t min_degree = 0;

  static AcdParams from(const Config& cfg, std::uint64_t min_degree = 0);
};

enum class AcdClass : std::uint8_t { Sparse, Uneven, Dense, LowDegree, Unplaced };

struct AlmostCliqueDecomposition {
  std::vector<NodeId> v_sparse;
  std::vector<NodeId> v_uneven;
  std::vector<std::vector<NodeId>> cliques;
  /// Degree below params.min_degree.
  std::vector<NodeId> v_low;
  /// Neither sparse nor uneven, and no almost-clique satisfying the size
  /// conditions could hold them.
  std::vector<NodeId> v_unplaced;
  std::vector<AcdClass> cls;
  std::vector<std::int64_t> clique_of;  // -1 when not dense

  std::vector<NodeId> dense() const;
};

/// Throws SpaceExceeded when `space_words` is given and Delta^2 exceeds it.
AlmostCliqueDecomposition compute_acd(const D1LCInstance& inst, const AcdParams& params,
                                      std::optional<std::uint64_t> space_words = std::nullopt);

struct AcdViolation {
  NodeId node;
  std::string condition;
};

/// Checks the partition and conditions (i)-(iv) node by node, plus induced
/// clique diameter <= 2.
std::vector<AcdViolation> check_acd(const D1LCInstance& inst, const AlmostCliqueDecomposition& acd,
                                    const AcdParams& params);

/// H(c): sum of 1/p(u) over neighbors u of v whose palette holds c.
Rational heavy_mass(const D1LCInstance& inst, NodeId v, Color c);

struct VStartClassification {
  std::vector<NodeId> v_balanced;
  std::vector<NodeId> v_disc;
  std::vector<NodeId> v_easy;
  std::vector<NodeId> v_heavy;
  std::vector<NodeId> v_start;
};

VStartClassification classify_vstart(const D1LCInstance& inst, const AlmostCliqueDecomposition& acd,
                                     const AcdParams& params);

struct CliqueRoles {
  NodeId leader = 0;
  std::vector<NodeId> outliers;
  std::vector<NodeId> inliers;
  bool low_slack = false;
};

/// Minimum slackability in the clique, smallest id on ties.
NodeId select_leader(const D1LCInstance& inst, const std::vector<NodeId>& clique);
CliqueRoles compute_outliers(const D1LCInstance& inst, const std::vector<NodeId>& clique, NodeId leader,
                             std::uint64_t ell);
bool is_low_slack_clique(const D1LCInstance& inst, const std::vector<NodeId>& clique, NodeId leader,
                         std::uint64_t ell);

}  // namespace d1lc
