#pragma once

#include "d1lc/config.hpp"
#include "d1lc/instance.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace d1lc {

struct MpcConfig {
  Rational phi;
  Rational delta;
  std::uint64_t n = 0;
  std::uint64_t local_space_words = 1;
  std::uint64_t machine_count = 1;
  unsigned sort_rounds = 3;

  /// local_space_words = ceil(n^phi); machine_count from cfg or, when unset,
  /// 2n + ceil(2 * words / s) for an instance of `words` words.
  static MpcConfig make(const Config& cfg, std::uint64_t n, std::uint64_t words);
};

struct Message {
  std::uint64_t src = 0;
  std::uint64_t dst = 0;
  std::uint64_t seq = 0;
  std::uint64_t words = 1;
  std::uint64_t digest = 0;
};

struct RoundStats {
  std::uint64_t rounds_elapsed = 0;
  std::uint64_t peak_words_per_machine = 0;
  std::uint64_t total_messages = 0;
  std::uint64_t total_words = 0;
  std::map<std::string, std::uint64_t> primitive_invocations;
  std::map<std::string, std::uint64_t> rounds_by_category;
};

/// Round counters alone, for composing branches that run simultaneously on
/// disjoint machines.
struct RoundClock {
  std::uint64_t rounds = 0;
  std::map<std::string, std::uint64_t> by_category;
};

/// Machines responsible for each node: a run of edge machines holding the
/// adjacency list in chunks of at most s words, then palette machines.
struct Placement {
  std::vector<std::uint64_t> first_edge_machine;
  std::vector<std::uint64_t> first_palette_machine;
  std::uint64_t machines_used = 0;
  std::uint64_t peak_load = 0;
  std::uint64_t home(NodeId v) const { return first_edge_machine[v]; }
};

Placement assign_machines(const D1LCInstance& inst, const MpcConfig& cfg);

class MpcSimulator {
 public:
  explicit MpcSimulator(MpcConfig cfg);

  const MpcConfig& config() const noexcept { return cfg_; }

  /// One synchronous round. Throws SendOverflow / ReceiveOverflow when a
  /// machine sends or receives more than local_space_words words. Delivered
  /// messages are ordered by (dst, src, seq).
  std::vector<Message> exchange(std::vector<Message> messages);

  /// One LOCAL round in which every sender sends `words` words along each
  /// incident edge; split into as many exchanges as the budgets require.
  /// Returns the number of exchanges used.
  std::uint64_t local_round(const D1LCInstance& inst, const Placement& placement, std::span<const NodeId> senders,
                            std::uint64_t words, std::uint64_t tag);

  /// Radius-r induced ball of each node with palettes; labels hold the ids of
  /// `inst`. Throws SpaceExceeded when Delta^(2r) exceeds local space.
  std::vector<D1LCInstance> collect_ball(const D1LCInstance& inst, std::span<const NodeId> nodes, unsigned radius);

  /// Stable sort charged as a constant number of rounds.
  template <class T, class Key>
  std::vector<T> global_sort(std::vector<T> records, Key key) {
    if (records.size() > cfg_.machine_count * cfg_.local_space_words) {
      throw_insufficient(records.size());
    }
    std::stable_sort(records.begin(), records.end(), [&](const T& a, const T& b) { return key(a) < key(b); });
    charge("global_sort", cfg_.sort_rounds);
    return records;
  }

  /// Adds rounds for a primitive executed as a black box.
  void charge(const std::string& primitive, std::uint64_t rounds);
  /// Records a storage load; throws SpaceExceeded above the budget.
  void note_load(std::uint64_t words);
  /// Folds extra data (e.g. a state digest) into the transcript.
  void mix(std::uint64_t value) noexcept;

  /// Category that subsequent rounds are attributed to.
  std::string set_category(std::string category);
  const std::string& category() const noexcept { return category_; }

  RoundStats account() const { return stats_; }
  RoundClock clock() const { return {stats_.rounds_elapsed, stats_.rounds_by_category}; }
  /// Rewinds or advances the round counters; messages, space and the
  /// transcript are unaffected.
  void set_clock(RoundClock clock);
  std::uint64_t transcript_hash() const noexcept { return transcript_; }

 private:
  void add_rounds(std::uint64_t r);
  [[noreturn]] void throw_insufficient(std::uint64_t words) const;

  MpcConfig cfg_;
  RoundStats stats_;
  std::uint64_t transcript_;
  std::string category_ = "pipeline";
};

/// Scoped category switch.
class CategoryScope {
 public:
  CategoryScope(MpcSimulator* sim, std::string category) : sim_(sim) {
    if (sim_) previous_ = sim_->set_category(std::move(category));
  }
  ~CategoryScope() {
    if (sim_) sim_->set_category(previous_);
  }
  CategoryScope(const CategoryScope&) = delete;
  CategoryScope& operator=(const CategoryScope&) = delete;

 private:
  MpcSimulator* sim_;
  std::string previous_;
};

std::uint64_t hash_state(const ColoringState& st, std::span<const NodeId> labels);

}  // namespace d1lc
