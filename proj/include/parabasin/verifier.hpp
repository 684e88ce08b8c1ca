#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "parabasin/kobayashi.hpp"
#include "parabasin/parabolic.hpp"
#include "parabasin/petals.hpp"

namespace parabasin {

/// Parameters produced by the proof recipe for a target distance C.
struct TheoremParams {
  double C = 0.0;
  int m = 1;
  int direction = 0;
  double theta0 = 0.0;
  double theta0_prime = 0.0;
  double epsilon = 0.0;
  double theta_star = 0.0;       // arg(z0) measured from sector_low
  double sector_low = 0.0;       // arg(v_j) - pi/m
  Complex z0;
  Complex z0_normalized;         // (z0 / |z0|) rotated so sector_low -> 0
  ModelDomain comparison_domain;
  bool comparison_contains_basin = false;  // true unless higher terms exist
  PacManConstruction construction;
};

/// theta0 = min(1/(2 C e^C), pi/6)/2; eps = R0' e^{-2C/m};
/// z0 = eps e^{i(sector_low + theta*)}, theta* = min(1.5 theta0,
/// 0.9 asin(1/(2 C e^C))); theta0' from the Kobayashi disk clearance.
TheoremParams choose_parameters(const ParabolicMap& f, double C, int direction);

struct PairCertificate {
  DistanceBound bound;                   // exact comparison-domain distance
  std::vector<DistanceBound> case_bounds;  // applicable hand estimates
};

/// The proof's hand estimates for (z0, q_tilde): case1 when |q_tilde| >= R0',
/// then along the geodesic from z0 either the vertical estimate up to the
/// point where it leaves the band Im z0~ e^{+-C}, or the horizontal one if it
/// reaches the ray at sector_low + pi/(2m) inside the band.
std::vector<DistanceBound> case_bounds(const TheoremParams& params,
                                       const DomainPoint& q_tilde);

/// Throws OutsideComparisonDomain when q_tilde has no lift into the
/// comparison domain.
PairCertificate certify_pair(const TheoremParams& params, Complex q_tilde);

struct PointBound {
  QPoint point;
  double bound = 0.0;
};

struct TheoremCertificate {
  TheoremParams params;
  Complex q;
  int k_max = 0;
  int l_max = 0;
  std::map<std::pair<int, int>, std::size_t> counts;  // per (k, l)
  std::size_t generated = 0;
  std::size_t excluded = 0;
  std::vector<PointBound> bounds;        // enumeration order
  std::vector<QPoint> uncertifiable;     // outside the comparison domain
  std::optional<PointBound> witness;     // attains global_min
  double global_min = 0.0;
  std::size_t remark3_violations = 0;    // non-real points inside D_{R0'}
  std::size_t case_bound_violations = 0; // case bound above exact distance
  bool pass = false;
  std::int64_t runtime_ms = 0;
};

struct VerifyOptions {
  std::optional<Complex> z0_override;
  double tol = 1e-10;
};

TheoremCertificate verify_theorem(const ParabolicMap& f, double C, Complex q,
                                  int k_max, int l_max, int direction,
                                  const VerifyOptions& options = {});

enum class ClosureStatus { Ok, PreconditionFailed };

struct ClosureFailure {
  Complex point;
  std::string reason;
};

struct ClosureReport {
  ClosureStatus status = ClosureStatus::Ok;
  int depth = 0;
  std::size_t preimages_checked = 0;
  std::size_t q_points_checked = 0;
  std::size_t q_points_beyond_truncation = 0;
  std::vector<ClosureFailure> failures;
};

/// Mechanical premises of the preimage-closure argument: every depth-<=depth
/// preimage w of z0 satisfies |f(w) - parent| < 1e-8, and every enumerated
/// point whose image lies in the truncation maps onto a point certified >= C.
ClosureReport corollary_d_closure(const ParabolicMap& f,
                                  const TheoremCertificate& cert, int depth);

}  // namespace parabasin
