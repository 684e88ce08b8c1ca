#include "parabasin/error.hpp"

namespace parabasin {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NotParabolic: return "NotParabolic";
    case ErrorKind::Linear: return "Linear";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::OriginInput: return "OriginInput";
    case ErrorKind::DegenerateAngle: return "DegenerateAngle";
    case ErrorKind::OutsideDomain: return "OutsideDomain";
    case ErrorKind::NumericOverflow: return "NumericOverflow";
    case ErrorKind::PathExitsDomain: return "PathExitsDomain";
    case ErrorKind::BadRadii: return "BadRadii";
    case ErrorKind::NonPositiveImaginary: return "NonPositiveImaginary";
    case ErrorKind::SmallRealPart: return "SmallRealPart";
    case ErrorKind::NoClearance: return "NoClearance";
    case ErrorKind::ConstructionFailed: return "ConstructionFailed";
    case ErrorKind::OutsideComparisonDomain: return "OutsideComparisonDomain";
    case ErrorKind::SeedNotInBasin: return "SeedNotInBasin";
    case ErrorKind::IoFailure: return "IoFailure";
  }
  return "Unknown";
}

}  // namespace parabasin
