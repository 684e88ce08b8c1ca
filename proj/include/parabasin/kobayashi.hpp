#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

namespace parabasin {

using Complex = std::complex<double>;

// Simply connected comparison domains. Each owns an exact chart onto the
// upper half-plane.
struct HalfPlane {};
struct SlitPlane {};                // C \ [0, inf), arg in (0, 2 pi)
struct Sector {                     // arg in (arg_low, arg_high), width <= 2 pi
  double arg_low = 0.0;
  double arg_high = 0.0;
};
struct DoubleSector {               // lifted arg in (arg_low, arg_high), width > 2 pi
  double arg_low = 0.0;
  double arg_high = 0.0;
};

using ModelDomain = std::variant<HalfPlane, SlitPlane, Sector, DoubleSector>;

std::string_view variant_name(const ModelDomain& domain);

/// Point with an explicit argument lift, needed on domains wider than 2 pi.
struct LiftedPoint {
  double r = 0.0;
  double theta = 0.0;
};

/// A plane point, optionally carrying an argument lift. Plain complex points
/// on a DoubleSector are lifted automatically when the lift is unique.
struct DomainPoint {
  Complex z;
  std::optional<double> theta;

  DomainPoint(Complex value) : z(value) {}  // NOLINT(implicit)
  DomainPoint(double value) : z(value) {}   // NOLINT(implicit)
  DomainPoint(LiftedPoint p)                // NOLINT(implicit)
      : z(std::polar(p.r, p.theta)), theta(p.theta) {}
};

/// Every argument lift of z inside the domain's angular range (0, 1 or 2
/// values; always <= 1 except on a DoubleSector).
std::vector<double> lifts(const ModelDomain& domain, Complex z);

Complex chart(const ModelDomain& domain, const DomainPoint& p);
DomainPoint chart_inverse(const ModelDomain& domain, Complex w);

/// Infinitesimal Kobayashi metric |chi'(z)| / Im chi(z).
double density(const ModelDomain& domain, const DomainPoint& p);

enum class BoundKind { Exact, LowerBound };
enum class BoundMethod { Chart, Case1, Case2, Horizontal, Monotonicity };

std::string_view to_string(BoundKind kind);
std::string_view to_string(BoundMethod method);

struct CaseConstants {
  double c1 = 0.0;     // inf (m t/2) / sin(m t/2) over the range
  double c2 = 0.0;     // inf sin t / t over the range
  double kappa = 0.0;  // inf of the exact ratio density * Im z; the value used
};

struct DistanceBound {
  double value = 0.0;
  BoundKind kind = BoundKind::Exact;
  BoundMethod method = BoundMethod::Chart;
  std::optional<CaseConstants> constants;
};

/// Closed-form distance through the chart:
/// 2 asinh(|w1 - w2| / (2 sqrt(Im w1 Im w2))), evaluated in log-polar form.
DistanceBound distance_exact(const ModelDomain& domain, const DomainPoint& p1,
                             const DomainPoint& p2);

struct PathPolyline {
  std::vector<DomainPoint> vertices;
};

/// Kobayashi length by adaptive Gauss-Kronrod quadrature of the density.
/// Throws PathExitsDomain if some segment leaves the domain.
double path_length(const ModelDomain& domain, const PathPolyline& path);

/// Length of a smooth curve given position and Euclidean speed |gamma'(t)|
/// on t in [0, 1].
double curve_length(const ModelDomain& domain,
                    const std::function<DomainPoint(double)>& position,
                    const std::function<double(double)>& speed);

/// Point at fraction t of the hyperbolic geodesic from p1 to p2 (arc-length
/// parametrized), plus its Euclidean speed in the domain.
struct GeodesicSample {
  DomainPoint point;
  double speed;
};
GeodesicSample geodesic_sample(const ModelDomain& domain, const DomainPoint& p1,
                               const DomainPoint& p2, double t);

/// First point where the geodesic from p1 to p2 meets the ray at lifted
/// argument ray_arg, if it does.
std::optional<DomainPoint> geodesic_crossing(const ModelDomain& domain,
                                             const DomainPoint& p1,
                                             const DomainPoint& p2,
                                             double ray_arg);

/// (m/2)(ln R - ln eps). Throws BadRadii unless 0 < eps < R.
DistanceBound bound_case1(double eps, double R, int m);

struct AngleRange {
  double low = 0.0;   // exclusive
  double high = 0.0;  // inclusive
};

/// kappa |ln Im z' - ln Im z0| with kappa = inf over the range of
/// m sin t / (2 sin(m t / 2)). Throws NonPositiveImaginary.
DistanceBound bound_case2(Complex z0, Complex z_prime, int m, AngleRange range);

/// 1 / (2 e^C Im z0); throws SmallRealPart unless Re z0 > 1/2.
DistanceBound bound_case2_horizontal(Complex z0, double C);

/// Largest t such that the sub-sector {|arg - probe_arg| < t} misses the
/// closed Kobayashi disk of radius C about center. Throws NoClearance.
double kobayashi_disk_clearance(const ModelDomain& domain,
                                const DomainPoint& center, double C,
                                double probe_arg);

/// Angular range (low, high) of a domain; HalfPlane is (0, pi).
std::pair<double, double> angular_range(const ModelDomain& domain);

}  // namespace parabasin
