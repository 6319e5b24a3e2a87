#pragma once

#include "d1lc/instance.hpp"
#include "d1lc/rational.hpp"
#include "d1lc/tape.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace d1lc {

enum class Subroutine {
  TryRandomColor,
  GenerateSlack,
  PutAside,
  SynchColorTrial,
  MultiTrialFirstLoop,
  MultiTrialSecondLoop,
  MultiTrialFinal,
};

std::string_view subroutine_name(Subroutine s) noexcept;
/// Throws UnknownSubroutine.
Subroutine parse_subroutine(std::string_view name);
std::vector<Subroutine> all_subroutines();

/// Per-node success predicate over a phase's outputs. The outputs are the
/// coloring state plus a mark per node (put-aside membership). The weak
/// property is the same predicate read on the state in which some nodes have
/// been replaced by Deferred.
class SuccessEvaluator {
 public:
  virtual ~SuccessEvaluator() = default;
  virtual Subroutine kind() const noexcept = 0;
  /// Result for each node of `subjects`, in order.
  virtual std::vector<char> evaluate(const D1LCInstance& inst, const ColoringState& st,
                                     std::span<const char> marked, std::span<const NodeId> subjects) const = 0;
  bool holds(const D1LCInstance& inst, const ColoringState& st, std::span<const char> marked, NodeId v) const {
    NodeId one[1] = {v};
    return evaluate(inst, st, marked, one)[0] != 0;
  }
};

struct SuccessEvaluators {
  std::shared_ptr<const SuccessEvaluator> ssp;
  std::shared_ptr<const SuccessEvaluator> wsp;
  unsigned radius = 2;
};

/// One derandomizable phase: a step driven by a per-node tape, plus the
/// success property of the nodes it is responsible for.
struct Phase {
  std::string name;
  Subroutine kind = Subroutine::TryRandomColor;
  unsigned radius = 2;
  std::vector<NodeId> subjects;  // nodes whose SSP decides deferral
  std::vector<NodeId> readers;   // nodes that read the tape
  std::uint64_t bits_per_node = 0;
  unsigned local_rounds = 1;
  unsigned words_per_message = 1;
  std::function<void(ColoringState&, std::vector<char>& marked, RandomTape&)> step;
  std::shared_ptr<const SuccessEvaluator> ssp;
};

struct PhaseRecord {
  std::string name;
  Subroutine kind = Subroutine::TryRandomColor;
  std::size_t subjects = 0;
  unsigned seed_bits = 0;
  std::uint64_t chosen_seed = 0;
  std::uint64_t failures = 0;
  Rational mean_failures = 0;
  bool enumerated = false;
  std::size_t deferred = 0;
  std::size_t colored = 0;
  std::uint64_t rounds = 0;
  std::uint64_t color_count = 0;
  std::uint64_t output_bits = 0;
  std::uint64_t peak_ball_words = 0;
};

class PhaseRunner {
 public:
  virtual ~PhaseRunner() = default;
  /// Runs the step, then defers every subject whose SSP fails and is not
  /// Colored.
  virtual PhaseRecord run(const D1LCInstance& inst, const Phase& phase, ColoringState& st,
                          std::vector<char>& marked) = 0;
};

/// Defers the failing subjects; returns how many were deferred.
std::size_t defer_failures(const Phase& phase, const std::vector<char>& ok, ColoringState& st,
                           std::vector<char>& marked);

}  // namespace d1lc
