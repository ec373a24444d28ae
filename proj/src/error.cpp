#include "npc/error.hpp"

namespace npc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::NoUniqueSolution: return "NoUniqueSolution";
    case ErrorCode::Inconsistent: return "Inconsistent";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::InvalidLength: return "InvalidLength";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnsupportedParameters: return "UnsupportedParameters";
    case ErrorCode::InvalidPositions: return "InvalidPositions";
    case ErrorCode::AmbiguousErasure: return "AmbiguousErasure";
    case ErrorCode::TooManyPatterns: return "TooManyPatterns";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::InvalidNetwork: return "InvalidNetwork";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace npc
