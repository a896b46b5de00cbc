#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lfpoly {

enum class ErrorKind {
  NonTrivialityViolation,
  BadFriendIndex,
  DegenerateScenario,
  NegativeEntry,
  NormalizationFailure,
  SignallingInput,
  EmptyRestriction,
  FriendStructureViolation,
  DimensionMismatch,
  BadWeights,
  BadStrategy,
  EmptyInput,
  UnboundedInput,
  EmptyPolytope,
  ScenarioTooLarge,
  IncompatibleScenario,
  WrongScenarioShape,
  VerificationFailure,
  ShapeMismatch,
  NotAState,
  NotAPovm,
  NormalizationDrift,
  NegativeAfterRounding,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lfpoly
