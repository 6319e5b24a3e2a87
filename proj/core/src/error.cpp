#include "d1lc/error.hpp"

namespace d1lc {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::Parse: return "ParseError";
    case Errc::BadConfig: return "BadConfig";
    case Errc::NonSymmetricEdge: return "NonSymmetricEdge";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::PaletteTooSmall: return "PaletteTooSmall";
    case Errc::ImproperInput: return "ImproperInput";
    case Errc::SpaceExceeded: return "SpaceExceeded";
    case Errc::EmptyClique: return "EmptyClique";
    case Errc::TapeExhausted: return "TapeExhausted";
    case Errc::XTooLarge: return "XTooLarge";
    case Errc::BadParameters: return "BadParameters";
    case Errc::ProbabilityOutOfRange: return "ProbabilityOutOfRange";
    case Errc::UnknownSubroutine: return "UnknownSubroutine";
    case Errc::InlierNotAdjacent: return "InlierNotAdjacent";
    case Errc::InsufficientGlobalSpace: return "InsufficientGlobalSpace";
    case Errc::SendOverflow: return "SendOverflow";
    case Errc::ReceiveOverflow: return "ReceiveOverflow";
    case Errc::SeedSpaceTooLarge: return "SeedSpaceTooLarge";
    case Errc::OutputLengthExceeded: return "OutputLengthExceeded";
    case Errc::ResidualTooLarge: return "ResidualTooLarge";
    case Errc::NoValidSeed: return "NoValidSeed";
    case Errc::DegreeTooHigh: return "DegreeTooHigh";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what, std::optional<std::uint64_t> subject)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), subject_(subject) {}

}  // namespace d1lc
