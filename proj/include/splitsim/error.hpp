#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace splitsim {

enum class Errc {
  InvalidInput,
  DuplicateEdge,
  IndexOutOfRange,
  DegreeBelowDelta,
  RoundLimitExceeded,
  RadiusViolation,
  UnsupportedRadius,
  InvalidScheduleColoring,
  InvalidOrder,
  ShrinkageViolation,
  PreconditionSize,
  PreconditionDelta,
  PreconditionRatio,
  PreconditionDegree,
  ComponentTooLarge,
  GirthTooSmall,
  GapViolation,
  RetryExhausted,
  ParamViolation,
  NotAWeakMulticolorSplitting,
  NotAWeakSplitting,
  MinDegreeTooSmall,
  EstimatorOverflow,
  IterationBudgetExceeded,
  IncompleteColoring,
  InfeasibleParams,
  SelfCheckFailed,
};

std::string_view errc_name(Errc code) noexcept;

/// Exception type for every precondition failure and internal guard in the
/// library. The code is stable and is what tests match on.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace splitsim
