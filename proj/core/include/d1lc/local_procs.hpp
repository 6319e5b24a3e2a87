#pragma once

#include "d1lc/acd.hpp"
#include "d1lc/config.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/mpc.hpp"
#include "d1lc/phase.hpp"
#include "d1lc/success.hpp"
#include "d1lc/tape.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace d1lc {

struct TrialOutcome {
  NodeId node = 0;
  bool colored = false;
  Color color = 0;
  friend bool operator==(const TrialOutcome&, const TrialOutcome&) = default;
};

/// One round: each uncolored participant draws a color from its residual
/// palette and keeps it unless a participating neighbor drew the same color.
std::vector<TrialOutcome> try_random_color(const D1LCInstance& inst, ColoringState& st,
                                           std::span<const NodeId> participants, RandomTape& tape);

/// Each participant samples x distinct residual colors and keeps the smallest
/// one that no participating neighbor sampled. Throws XTooLarge when x exceeds
/// a participant's residual palette.
std::vector<TrialOutcome> multi_trial(const D1LCInstance& inst, ColoringState& st,
                                      std::span<const NodeId> participants, std::uint64_t x, RandomTape& tape);

/// 4-bit sampling (probability 1/16) followed by one try_random_color round
/// among the sampled nodes. Unsampled nodes are reported as not colored.
std::vector<TrialOutcome> generate_slack(const D1LCInstance& inst, ColoringState& st,
                                         std::span<const NodeId> participants, RandomTape& tape);
inline constexpr unsigned kGenerateSlackBits = 4;

/// Leaders permute their residual palettes and propose the i-th color to the
/// i-th inlier (by id). Inliers with marked[v] set, or not Uncolored, sit
/// out. Throws InlierNotAdjacent.
std::vector<TrialOutcome> synch_color_trial(const D1LCInstance& inst, ColoringState& st,
                                            const std::vector<CliqueRoles>& roles, std::span<const char> marked,
                                            RandomTape& tape);

struct PutAsideResult {
  std::vector<NodeId> nodes;  // sorted
  std::vector<std::string> warnings;
};
inline constexpr unsigned kPutAsideBits = 16;

/// Sampling threshold out of 2^16 for one clique; sets `warning` when p_s > 1.
std::uint64_t put_aside_threshold(const D1LCInstance& inst, const ColoringState& st, const CliqueRoles& role,
                                  std::uint64_t ell, std::string* warning);
/// Samples inliers of low-slack cliques with probability floor(p_s 2^16)/2^16,
/// p_s = ell^2 / (48 Delta_C); keeps sampled nodes with no sampled neighbor.
/// p_s > 1 is clamped to 1 with a warning.
PutAsideResult put_aside(const D1LCInstance& inst, const ColoringState& st, const std::vector<CliqueRoles>& roles,
                         std::uint64_t ell, RandomTape& tape);

std::uint64_t log_star(std::uint64_t x) noexcept;
/// 2^^i, saturating at UINT64_MAX.
std::uint64_t tower(unsigned i) noexcept;

struct SlackColorPlan {
  std::uint64_t s_min = 2;
  Rational kappa = 1;
  std::uint64_t rho = 1;
  unsigned first_loop = 0;   // iterations i = 0..log* rho
  unsigned second_loop = 0;  // iterations i = 1..ceil(1/kappa)
};

/// Throws BadParameters unless 1 < s_min and 1/s_min < kappa <= 1.
SlackColorPlan plan_slack_color(std::uint64_t s_min, const Rational& kappa);

/// Executes a phase and defers the failing subjects. Every runner must leave
/// the same state for the same inputs.
class RoutedRunner : public PhaseRunner {
 public:
  void attach(MpcSimulator* sim) noexcept { sim_ = sim; }
  MpcSimulator* simulator() const noexcept { return sim_; }

 protected:
  /// Routes the phase's LOCAL rounds through the simulator (if attached) and
  /// charges the success evaluation; returns the rounds used.
  std::uint64_t route(const D1LCInstance& inst, const Phase& phase, std::uint64_t tag);
  PhaseRecord finish(const D1LCInstance& inst, const Phase& phase, ColoringState& st, std::vector<char>& marked,
                     const ColoringState& before);

 private:
  MpcSimulator* sim_ = nullptr;
};

/// Runs every phase on one shared tape.
class TapeRunner final : public RoutedRunner {
 public:
  explicit TapeRunner(RandomTape& tape) : tape_(&tape) {}
  PhaseRecord run(const D1LCInstance& inst, const Phase& phase, ColoringState& st,
                  std::vector<char>& marked) override;

 private:
  RandomTape* tape_;
  std::uint64_t counter_ = 0;
};

/// Fresh independent randomness for every phase from (entropy seed, phase index).
class RandomizedRunner final : public RoutedRunner {
 public:
  explicit RandomizedRunner(std::uint64_t entropy_seed, unsigned rejection_tries = 8)
      : seed_(entropy_seed), tries_(rejection_tries) {}
  PhaseRecord run(const D1LCInstance& inst, const Phase& phase, ColoringState& st,
                  std::vector<char>& marked) override;

 private:
  std::uint64_t seed_;
  unsigned tries_;
  std::uint64_t counter_ = 0;
};

/// What the orchestrators share within one call of the mid-degree algorithm.
struct LevelContext {
  const Config* cfg = nullptr;
  std::uint64_t threshold = 0;
  std::uint64_t ell = 1;
  PhaseRunner* runner = nullptr;
  MpcSimulator* sim = nullptr;
  std::vector<PhaseRecord>* records = nullptr;
  std::vector<std::string>* warnings = nullptr;
  std::optional<std::uint64_t> space_words;
  std::string prefix;  // phase-name prefix, e.g. the recursion level
  std::function<void(const D1LCInstance&, const AlmostCliqueDecomposition&)> on_acd;
};

/// SlackColor on the uncolored participants. When s_min is not given it is
/// max(2, minimum participant slack); kappa <= 1/s_min falls back to 1.
void slack_color(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked,
                 std::span<const NodeId> participants, LevelContext& ctx,
                 std::optional<std::uint64_t> s_min = std::nullopt);
/// Same on one tape with explicit parameters; returns the participants'
/// outcomes.
std::vector<TrialOutcome> slack_color(const D1LCInstance& inst, ColoringState& st,
                                      std::span<const NodeId> participants, std::uint64_t s_min,
                                      const Rational& kappa, const Config& cfg, RandomTape& tape);

void color_sparse(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked,
                  const AlmostCliqueDecomposition& acd, const VStartClassification& vstart, LevelContext& ctx);

struct DenseResult {
  std::vector<CliqueRoles> roles;
  std::vector<NodeId> put_aside;
};

/// The dense listing, ending with the leaders coloring their put-aside sets.
DenseResult color_dense(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked,
                        const AlmostCliqueDecomposition& acd, LevelContext& ctx);

struct MiddleResult {
  ColoringState state;
  AlmostCliqueDecomposition acd;
  VStartClassification vstart;
  DenseResult dense;
};

MiddleResult color_middle(const D1LCInstance& inst, LevelContext& ctx);
/// Same on an existing state; `out` (if given) receives everything but the state.
void color_middle_on(const D1LCInstance& inst, ColoringState& st, std::vector<char>& marked, LevelContext& ctx,
                     MiddleResult* out = nullptr);
/// Randomized or tape-driven convenience forms with default context values
/// (threshold and ell from cfg for this instance).
MiddleResult color_middle(const D1LCInstance& inst, const Config& cfg, RandomTape& tape);
MiddleResult color_middle(const D1LCInstance& inst, const Config& cfg, std::vector<PhaseRecord>* records = nullptr);

/// Smallest residual color, ascending id order, for Uncolored nodes in `nodes`.
void greedy_color(const D1LCInstance& inst, ColoringState& st, std::span<const NodeId> nodes);

}  // namespace d1lc
