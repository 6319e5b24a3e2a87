#pragma once

#include "d1lc/acd.hpp"
#include "d1lc/config.hpp"
#include "d1lc/local_procs.hpp"
#include "d1lc/mpc.hpp"
#include "d1lc/phase.hpp"
#include "d1lc/prg.hpp"
#include "d1lc/tape.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace d1lc {

/// Coloring of G^power: nodes within `power` hops get distinct colors.
struct PowerColoring {
  unsigned power = 0;
  std::vector<std::uint64_t> colors;  // per node; only meaningful for colored nodes
  std::uint64_t color_count = 0;
};

/// Greedy coloring of the listed nodes (all nodes when empty) in G^power, in
/// ascending id order. Throws SpaceExceeded when space_words is given and
/// Delta^power exceeds it.
PowerColoring color_power_graph_exp(const Graph& g, unsigned power, std::span<const NodeId> nodes = {},
                                    std::optional<std::uint64_t> space_words = std::nullopt);
/// Coloring of G^power used for chunk assignment: the greedy one, or distinct
/// colors by rank when Delta^power + 1 is at least the number of listed nodes
/// (same color bound, no ball exploration).
PowerColoring chunk_coloring(const Graph& g, unsigned power, std::span<const NodeId> nodes = {});
/// Coloring of G^(4 radius).
PowerColoring color_power_graph(const Graph& g, unsigned radius, std::span<const NodeId> nodes = {},
                                std::optional<std::uint64_t> space_words = std::nullopt);

/// Tape in which a node of power color i reads output bits
/// [i * bits_per_node, (i + 1) * bits_per_node) of the bound seed.
struct ChunkedTape {
  std::unique_ptr<BitSource> bits;
  RandomTape tape;
};

/// Throws OutputLengthExceeded when color_count * bits_per_node exceeds the
/// source's output length.
ChunkedTape assign_chunks(const RandomnessSource& source, std::uint64_t seed, const PowerColoring& coloring,
                          std::uint64_t bits_per_node, unsigned rejection_tries = 8);
std::vector<std::uint64_t> chunk_bases(const PowerColoring& coloring, std::uint64_t bits_per_node);

/// Host threads for seed evaluation: PALETTE_MPC_THREADS, else the hardware
/// concurrency. Never affects results.
unsigned host_threads();

/// Index of the seed picked by conditional expectations over a full table of
/// failure counts: bits fixed from the lowest, each to the value with the
/// smaller completion sum, ties to 0.
std::uint64_t conditional_expectation_seed(std::span<const std::uint64_t> failures);

/// Chooses each phase's seed by conditional expectations over all seeds and
/// applies the phase with that seed.
class DerandomizedRunner final : public RoutedRunner {
 public:
  explicit DerandomizedRunner(const Config& cfg) : cfg_(&cfg) {}
  PhaseRecord run(const D1LCInstance& inst, const Phase& phase, ColoringState& st,
                  std::vector<char>& marked) override;

  /// Per-node words of the radius-r ball, for reporting (and enforcement when
  /// enforce_ball_space is set).
  void set_ball_words(std::vector<std::uint64_t> words) { ball_words_ = std::move(words); }
  /// Failure count per seed of the last phase with a seed search.
  const std::vector<std::uint64_t>& last_table() const noexcept { return table_; }

 private:
  const Config* cfg_;
  std::uint64_t counter_ = 0;
  std::vector<std::uint64_t> ball_words_;
  std::vector<std::uint64_t> table_;
};

/// Words (nodes + adjacency + palettes) of each node's radius-r ball; nodes
/// not listed get 0.
std::vector<std::uint64_t> ball_words(const D1LCInstance& inst, unsigned radius, std::span<const NodeId> nodes);

/// One step of the phase sequence run at each recursion level.
using Procedure = std::function<void(const D1LCInstance&, ColoringState&, std::vector<char>& marked, LevelContext&)>;

struct LevelTrace {
  unsigned level = 0;
  std::size_t nodes = 0;
  std::size_t max_degree = 0;
  std::size_t colored_by_phases = 0;
  std::size_t put_aside = 0;
  std::size_t deferred = 0;
  std::size_t late_deferred = 0;
  std::size_t fallback_nodes = 0;
};

struct AlgorithmOptions {
  MpcSimulator* sim = nullptr;
  /// Node count the low-degree threshold is computed from (default: this
  /// instance's).
  std::optional<std::uint64_t> global_n;
  /// Color low-degree leftovers with low_degree_fallback after each level.
  bool fallback = true;
  std::function<void(const D1LCInstance&, const AlmostCliqueDecomposition&)> on_acd;
  std::string prefix;
};

struct AlgorithmResult {
  ColoringState state;
  std::vector<PhaseRecord> phases;
  std::vector<LevelTrace> levels;
  std::vector<std::string> warnings;
  std::size_t final_greedy = 0;
};

/// Runs the procedures level by level, recursing on deferred nodes for
/// ceil(1/delta) levels, then colors what is left greedily by id. Throws
/// ResidualTooLarge when that remainder exceeds one machine.
AlgorithmResult derandomize_algorithm(std::span<const Procedure> procs, const D1LCInstance& inst, const Config& cfg,
                                      const AlgorithmOptions& options = {});

/// The mid-degree coloring procedure (decomposition, sparse and dense parts).
Procedure middle_procedure();

}  // namespace d1lc
