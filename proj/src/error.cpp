#include "splitsim/error.hpp"

namespace splitsim {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidInput: return "InvalidInput";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DegreeBelowDelta: return "DegreeBelowDelta";
    case Errc::RoundLimitExceeded: return "RoundLimitExceeded";
    case Errc::RadiusViolation: return "RadiusViolation";
    case Errc::UnsupportedRadius: return "UnsupportedRadius";
    case Errc::InvalidScheduleColoring: return "InvalidScheduleColoring";
    case Errc::InvalidOrder: return "InvalidOrder";
    case Errc::ShrinkageViolation: return "ShrinkageViolation";
    case Errc::PreconditionSize: return "PreconditionSize";
    case Errc::PreconditionDelta: return "PreconditionDelta";
    case Errc::PreconditionRatio: return "PreconditionRatio";
    case Errc::PreconditionDegree: return "PreconditionDegree";
    case Errc::ComponentTooLarge: return "ComponentTooLarge";
    case Errc::GirthTooSmall: return "GirthTooSmall";
    case Errc::GapViolation: return "GapViolation";
    case Errc::RetryExhausted: return "RetryExhausted";
    case Errc::ParamViolation: return "ParamViolation";
    case Errc::NotAWeakMulticolorSplitting: return "NotAWeakMulticolorSplitting";
    case Errc::NotAWeakSplitting: return "NotAWeakSplitting";
    case Errc::MinDegreeTooSmall: return "MinDegreeTooSmall";
    case Errc::EstimatorOverflow: return "EstimatorOverflow";
    case Errc::IterationBudgetExceeded: return "IterationBudgetExceeded";
    case Errc::IncompleteColoring: return "IncompleteColoring";
    case Errc::InfeasibleParams: return "InfeasibleParams";
    case Errc::SelfCheckFailed: return "SelfCheckFailed";
  }
  return "Unknown";
}

}  // namespace splitsim
