#include "mmspace/error.hpp"

namespace mmspace {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::AsymmetricDistance: return "AsymmetricDistance";
    case ErrorKind::NonpositiveDistance: return "NonpositiveDistance";
    case ErrorKind::TriangleViolation: return "TriangleViolation";
    case ErrorKind::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorKind::MassNotOne: return "MassNotOne";
    case ErrorKind::SizeOverflow: return "SizeOverflow";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::TooLargeForExact: return "TooLargeForExact";
    case ErrorKind::TooLargeForOracle: return "TooLargeForOracle";
    case ErrorKind::DegenerateProfile: return "DegenerateProfile";
    case ErrorKind::AnchorsNotLipschitz: return "AnchorsNotLipschitz";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::NotInformative: return "NotInformative";
    case ErrorKind::DisconnectedGraph: return "DisconnectedGraph";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

}  // namespace mmspace
