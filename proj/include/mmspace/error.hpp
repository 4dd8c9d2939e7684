#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mmspace {

enum class ErrorKind {
  ShapeMismatch,
  NonFinite,
  AsymmetricDistance,
  NonpositiveDistance,
  TriangleViolation,
  NonpositiveWeight,
  MassNotOne,
  SizeOverflow,
  EmptySet,
  TooLargeForExact,
  TooLargeForOracle,
  DegenerateProfile,
  AnchorsNotLipschitz,
  HypothesisViolated,
  NotInformative,
  DisconnectedGraph,
  InvalidArgument,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Library-wide exception. `kind()` is stable and machine-readable; the
/// message carries the human-oriented detail (worst triple, violating pair...).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace mmspace
