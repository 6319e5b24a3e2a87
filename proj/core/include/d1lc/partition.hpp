#pragma once

#include "d1lc/acd.hpp"
#include "d1lc/config.hpp"
#include "d1lc/derand.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/mpc.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace d1lc {

/// h1(v) = ((a1 v + b1) mod p1) mod B on node labels and
/// h2(c) = ((a2 c + b2) mod p2) mod (B - 1) on colors, p1 >= n and
/// p2 >= max(n^2, max color + 1) prime.
struct HashChoice {
  std::uint64_t bins = 1;
  std::uint64_t p1 = 2, a1 = 1, b1 = 0;
  std::uint64_t p2 = 2, a2 = 1, b2 = 0;
  std::uint64_t seed_index = 0;
  std::uint64_t candidates = 0;  // seeds examined
  bool trivial = true;           // everything stays in G_mid

  std::uint64_t node_bin(NodeId label) const noexcept;
  std::uint64_t color_bin(Color c) const noexcept;
};

struct PartitionResult {
  HashChoice hashes;
  std::uint64_t mid_degree_bound = 0;  // floor(n^(mid_degree_exponent delta))
  std::vector<NodeId> mid_nodes;       // ids of the partitioned instance
  std::vector<std::vector<NodeId>> bin_nodes;
  /// Bins 0..B-2 with palettes restricted to their color bin; the last bin
  /// keeps full palettes.
  std::vector<D1LCInstance> bins;
  D1LCInstance g_mid;
};

/// Degree bound for G_mid: floor(n^(mid_degree_exponent * delta)).
std::uint64_t mid_degree_bound(const Config& cfg, std::uint64_t n);
/// Number of node bins: ceil(n^delta).
std::uint64_t bin_count(const Config& cfg, std::uint64_t n);

/// First seed (in a fixed scan order) whose partition satisfies
/// d'(v) < 2 d(v) n^-delta for every v outside G_mid and d'(v) < p'(v) for
/// every v. Throws NoValidSeed after cfg.seed_budget candidates. `n` is the
/// global node count.
HashChoice select_hashes(const D1LCInstance& inst, const Config& cfg, std::uint64_t n);
PartitionResult low_space_partition(const D1LCInstance& inst, const Config& cfg, std::uint64_t n);

struct PartitionBulletCheck {
  std::size_t binned = 0;
  std::size_t degree_violations = 0;   // d'(v) >= 2 d(v) n^-delta
  std::size_t palette_violations = 0;  // d'(v) >= p'(v)
};
PartitionBulletCheck check_partition(const D1LCInstance& inst, const PartitionResult& part, const Config& cfg,
                                     std::uint64_t n);

/// Deterministic coloring for low degree: classes of a greedy G^2 coloring
/// are colored one after another, each greedily. Throws DegreeTooHigh when
/// the maximum degree exceeds `threshold`.
ColoringState low_degree_fallback(const D1LCInstance& inst, std::uint64_t threshold, MpcSimulator* sim = nullptr);
ColoringState low_degree_fallback(const D1LCInstance& inst, const Config& cfg, MpcSimulator* sim = nullptr);

struct RecursionEntry {
  unsigned depth = 0;
  std::string part;
  std::size_t nodes = 0;
  std::size_t max_degree = 0;
  std::size_t mid_nodes = 0;
  std::vector<std::size_t> bin_sizes;
  std::vector<std::size_t> bin_max_degrees;
  std::uint64_t seed_index = 0;
};

struct ReduceOptions {
  MpcSimulator* sim = nullptr;
  std::function<void(const D1LCInstance&, const PartitionResult&)> on_partition;
  std::function<void(const D1LCInstance&, const AlmostCliqueDecomposition&)> on_acd;
};

struct ReduceResult {
  ColoringState state;
  std::vector<PhaseRecord> phases;
  std::vector<LevelTrace> levels;
  std::vector<RecursionEntry> trace;
  std::vector<std::string> warnings;
  unsigned depth = 0;
  std::size_t final_greedy = 0;
};

/// Mid-degree coloring: the decomposition and local procedures, derandomized
/// or randomized per cfg.mode, with deferral recursion and the fallback.
/// `n` is the global node count.
ReduceResult derandomized_mid_degree_color(const D1LCInstance& inst, const Config& cfg, std::uint64_t n,
                                           const ReduceOptions& options = {});
/// Full pipeline: recursive partitioning, then mid-degree coloring of each
/// part. Returns a complete coloring.
ReduceResult low_space_color_reduce(const D1LCInstance& inst, const Config& cfg, const ReduceOptions& options = {});

}  // namespace d1lc
