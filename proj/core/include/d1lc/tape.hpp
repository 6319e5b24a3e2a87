#pragma once

#include "d1lc/graph.hpp"
#include "d1lc/prg.hpp"

#include <cstdint>
#include <vector>

namespace d1lc {

/// Per-node sequential view of a BitSource. Node v reads bits
/// [base[v], base[v] + demand) in order; reading further throws TapeExhausted.
class RandomTape {
 public:
  RandomTape(const BitSource& source, std::vector<std::uint64_t> base, std::uint64_t demand,
             unsigned rejection_tries = 8);

  /// Node v reads bits [v*demand, (v+1)*demand).
  static RandomTape contiguous(const BitSource& source, std::size_t n, std::uint64_t demand,
                               unsigned rejection_tries = 8);
  /// Effectively unlimited per-node streams, for unbounded sources.
  static RandomTape unbounded(const BitSource& source, std::size_t n, unsigned rejection_tries = 8);

  std::uint64_t read(NodeId v, unsigned count);
  /// Uniform value in [0, range): up to `rejection_tries` draws of
  /// ceil(log2 range) bits, then the last draw reduced mod range.
  std::uint64_t uniform(NodeId v, std::uint64_t range);

  std::uint64_t consumed(NodeId v) const noexcept { return cursor_[v]; }
  std::uint64_t demand() const noexcept { return demand_; }
  unsigned rejection_tries() const noexcept { return tries_; }
  std::size_t size() const noexcept { return base_.size(); }

 private:
  const BitSource* source_;
  std::vector<std::uint64_t> base_;
  std::vector<std::uint64_t> cursor_;
  std::uint64_t demand_;
  unsigned tries_;
};

/// ceil(log2 range), 0 for range <= 1.
unsigned bits_for(std::uint64_t range) noexcept;

}  // namespace d1lc
