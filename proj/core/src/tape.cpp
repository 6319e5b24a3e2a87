#include "d1lc/tape.hpp"

#include "d1lc/error.hpp"

#include <bit>
#include <string>

namespace d1lc {

unsigned bits_for(std::uint64_t range) noexcept {
  return range <= 1 ? 0u : static_cast<unsigned>(std::bit_width(range - 1));
}

RandomTape::RandomTape(const BitSource& source, std::vector<std::uint64_t> base, std::uint64_t demand,
                       unsigned rejection_tries)
    : source_(&source),
      base_(std::move(base)),
      cursor_(base_.size(), 0),
      demand_(demand),
      tries_(rejection_tries == 0 ? 1 : rejection_tries) {}

RandomTape RandomTape::contiguous(const BitSource& source, std::size_t n, std::uint64_t demand,
                                  unsigned rejection_tries) {
  std::vector<std::uint64_t> base(n);
  for (std::size_t v = 0; v < n; ++v) base[v] = v * demand;
  return RandomTape(source, std::move(base), demand, rejection_tries);
}

RandomTape RandomTape::unbounded(const BitSource& source, std::size_t n, unsigned rejection_tries) {
  return contiguous(source, n, std::uint64_t{1} << 40, rejection_tries);
}

std::uint64_t RandomTape::read(NodeId v, unsigned count) {
  if (count == 0) return 0;
  if (cursor_[v] + count > demand_) {
    throw Error(Errc::TapeExhausted,
                "node " + std::to_string(v) + " needs " + std::to_string(cursor_[v] + count) + " bits, declared " +
                    std::to_string(demand_),
                v);
  }
  std::uint64_t value = source_->bits(base_[v] + cursor_[v], count);
  cursor_[v] += count;
  return value;
}

std::uint64_t RandomTape::uniform(NodeId v, std::uint64_t range) {
  if (range <= 1) return 0;
  const unsigned b = bits_for(range);
  std::uint64_t value = 0;
  for (unsigned attempt = 0; attempt < tries_; ++attempt) {
    value = read(v, b);
    if (value < range) return value;
  }
  return value % range;
}

}  // namespace d1lc
