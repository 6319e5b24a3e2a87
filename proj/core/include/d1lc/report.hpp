#pragma once

#include "d1lc/derand.hpp"
#include "d1lc/instance.hpp"
#include "d1lc/mpc.hpp"
#include "d1lc/partition.hpp"
#include "d1lc/phase.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace d1lc {

struct RunReport {
  Verdict verdict;
  std::string mode;
  bool partition = true;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::size_t max_degree = 0;
  std::uint64_t local_space_words = 0;
  std::uint64_t machine_count = 0;
  std::uint64_t initial_load = 0;
  RoundStats stats;
  std::uint64_t transcript_hash = 0;
  std::uint64_t coloring_hash = 0;
  std::vector<PhaseRecord> phases;
  std::vector<LevelTrace> levels;
  std::vector<RecursionEntry> trace;
  unsigned depth = 0;
  std::uint64_t depth_bound = 0;
  std::size_t final_greedy = 0;
  std::vector<std::string> warnings;
  std::map<std::string, std::string> config;
  double wall_clock_seconds = 0.0;
};

/// Blocks of "key: value" lines; a block starts with a "[name]" line. The
/// wall-clock line comes last.
std::string format_report(const RunReport& report);

struct ReportBlock {
  std::string name;  // empty for the leading block
  std::vector<std::pair<std::string, std::string>> entries;
  std::string get(const std::string& key, const std::string& fallback = {}) const;
  std::uint64_t number(const std::string& key) const;
};
std::vector<ReportBlock> parse_report(std::string_view text);

/// Human-readable summary: rounds by category, fallback share, peak space
/// against the budget, per-phase totals and the deferral history.
std::string summarize_report(const std::vector<ReportBlock>& blocks);

/// The report text without its wall-clock line.
std::string strip_wall_clock(std::string_view text);

std::uint64_t coloring_hash(const ColoringState& st);
/// Derived recursion-depth bound ceil((1 - mid delta) / delta / (1 - log_n 2)),
/// 0 when the partition never triggers.
std::uint64_t recursion_depth_bound(const Config& cfg, std::uint64_t n);

}  // namespace d1lc
