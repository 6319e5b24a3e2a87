#pragma once

#include "d1lc/config.hpp"
#include "d1lc/phase.hpp"

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

namespace d1lc {

/// The inequality d * min(base1^q1, base2^q2) <= s, evaluated exactly.
struct SlackBound {
  std::uint64_t base1 = 1;
  Rational q1 = 1;
  std::uint64_t base2 = 1;
  Rational q2 = 1;
};

bool slack_bound_holds(const SlackBound& bound, std::uint64_t d, std::int64_t s);

/// What the evaluators need beyond the configuration.
struct SuccessContext {
  std::uint64_t threshold = 0;  // residual degree below this always succeeds
  std::uint64_t ell = 1;
  /// Clique index per node (-1 outside cliques), for the clique-level
  /// properties.
  std::shared_ptr<const std::vector<std::int64_t>> group;
  /// Synchronized-trial participants, for its fail count.
  std::shared_ptr<const std::vector<char>> participants;
  SlackBound bound;
};

/// Evaluators for one subroutine. Every property is monotone under deferral
/// (deferring a node only removes it from degrees and fail counts, and only
/// adds to put-aside counts), so the weak property is the same predicate.
SuccessEvaluators ssp_wsp_for(Subroutine s, const Config& cfg, const SuccessContext& ctx);
/// Same, by subroutine name; throws UnknownSubroutine.
SuccessEvaluators ssp_wsp_for(std::string_view name, const Config& cfg, const SuccessContext& ctx);

}  // namespace d1lc
