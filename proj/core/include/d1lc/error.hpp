#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace d1lc {

enum class Errc {
  Parse,
  BadConfig,
  NonSymmetricEdge,
  SelfLoop,
  PaletteTooSmall,
  ImproperInput,
  SpaceExceeded,
  EmptyClique,
  TapeExhausted,
  XTooLarge,
  BadParameters,
  ProbabilityOutOfRange,
  UnknownSubroutine,
  InlierNotAdjacent,
  InsufficientGlobalSpace,
  SendOverflow,
  ReceiveOverflow,
  SeedSpaceTooLarge,
  OutputLengthExceeded,
  ResidualTooLarge,
  NoValidSeed,
  DegreeTooHigh,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure in the library is reported through this type; `subject`
// carries the offending node or machine id when there is one.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::uint64_t> subject = std::nullopt);

  Errc code() const noexcept { return code_; }
  std::optional<std::uint64_t> subject() const noexcept { return subject_; }

 private:
  Errc code_;
  std::optional<std::uint64_t> subject_;
};

}  // namespace d1lc
