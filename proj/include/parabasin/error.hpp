#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace parabasin {

enum class ErrorKind {
  InvalidArgument,
  NotParabolic,
  Linear,
  NoConvergence,
  OriginInput,
  DegenerateAngle,
  OutsideDomain,
  NumericOverflow,
  PathExitsDomain,
  BadRadii,
  NonPositiveImaginary,
  SmallRealPart,
  NoClearance,
  ConstructionFailed,
  OutsideComparisonDomain,
  SeedNotInBasin,
  IoFailure,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind; every failure raised by the
/// library is one of these.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace parabasin
