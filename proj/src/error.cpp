#include "lfpoly/error.hpp"

namespace lfpoly {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonTrivialityViolation: return "NonTrivialityViolation";
    case ErrorKind::BadFriendIndex: return "BadFriendIndex";
    case ErrorKind::DegenerateScenario: return "DegenerateScenario";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::NormalizationFailure: return "NormalizationFailure";
    case ErrorKind::SignallingInput: return "SignallingInput";
    case ErrorKind::EmptyRestriction: return "EmptyRestriction";
    case ErrorKind::FriendStructureViolation: return "FriendStructureViolation";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::BadStrategy: return "BadStrategy";
    case ErrorKind::EmptyInput: return "EmptyInput";
    case ErrorKind::UnboundedInput: return "UnboundedInput";
    case ErrorKind::EmptyPolytope: return "EmptyPolytope";
    case ErrorKind::ScenarioTooLarge: return "ScenarioTooLarge";
    case ErrorKind::IncompatibleScenario: return "IncompatibleScenario";
    case ErrorKind::WrongScenarioShape: return "WrongScenarioShape";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotAState: return "NotAState";
    case ErrorKind::NotAPovm: return "NotAPovm";
    case ErrorKind::NormalizationDrift: return "NormalizationDrift";
    case ErrorKind::NegativeAfterRounding: return "NegativeAfterRounding";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace lfpoly
