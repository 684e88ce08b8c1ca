#include "parabasin/kobayashi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "parabasin/error.hpp"

namespace parabasin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kBoundaryGuard = 1e-12;  // relative angular distance
constexpr double kTiny = 1e-300;

struct Polar {
  double r;
  double theta;
};

// Position in the model picture: w = rho e^{i alpha}, alpha in (0, pi),
// log_rho kept separately so distances stay exactly scale invariant.
struct ChartPolar {
  double log_rho;
  double alpha;
};

double width(const ModelDomain& domain) {
  const auto [low, high] = angular_range(domain);
  return high - low;
}

Polar resolve(const ModelDomain& domain, const DomainPoint& p) {
  const auto [low, high] = angular_range(domain);
  const double r = std::abs(p.z);
  double theta;
  if (p.theta) {
    theta = *p.theta;
    if (!(theta > low && theta < high)) {
      throw Error(ErrorKind::OutsideDomain, "lifted argument outside the domain");
    }
  } else {
    const auto candidates = lifts(domain, p.z);
    if (candidates.empty()) {
      throw Error(ErrorKind::OutsideDomain, "point outside the domain");
    }
    if (candidates.size() > 1) {
      throw Error(ErrorKind::InvalidArgument,
                  "ambiguous lift on a double sector; pass a LiftedPoint");
    }
    theta = candidates.front();
  }
  const double gap = std::min(theta - low, high - theta);
  if (r * std::sin(std::min(gap, 0.5 * kPi)) < kTiny) {
    throw Error(ErrorKind::NumericOverflow, "point within 1e-300 of the boundary");
  }
  if (gap / (high - low) < kBoundaryGuard) {
    throw Error(ErrorKind::OutsideDomain, "point on a boundary ray");
  }
  return {r, theta};
}

ChartPolar to_chart(const ModelDomain& domain, const Polar& p) {
  const double low = angular_range(domain).first;
  const double k = kPi / width(domain);
  return {k * std::log(p.r), k * (p.theta - low)};
}

double distance_polar(const ModelDomain& domain, const Polar& a, const Polar& b) {
  const ChartPolar w1 = to_chart(domain, a);
  const ChartPolar w2 = to_chart(domain, b);
  const double sl = std::sinh(0.5 * (w1.log_rho - w2.log_rho));
  const double sd = std::sin(0.5 * (w1.alpha - w2.alpha));
  const double q = (sl * sl + sd * sd) / (std::sin(w1.alpha) * std::sin(w2.alpha));
  return 2.0 * std::asinh(std::sqrt(q));
}

// Smallest distance from a point to the ray at lifted argument phi (attained
// at equal chart modulus).
double distance_to_ray(const ModelDomain& domain, const Polar& center, double phi) {
  const double low = angular_range(domain).first;
  const double k = kPi / width(domain);
  const double a0 = k * (center.theta - low);
  const double a = k * (phi - low);
  const double sd = std::sin(0.5 * (a0 - a));
  return 2.0 * std::asinh(std::sqrt(sd * sd / (std::sin(a0) * std::sin(a))));
}

template <class F>
double integrate_unit(F&& integrand) {
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  return gauss_kronrod<double, 61>::integrate(integrand, 0.0, 1.0, 15, 1e-13, &error);
}

}  // namespace

std::pair<double, double> angular_range(const ModelDomain& domain) {
  return std::visit(
      [](const auto& d) -> std::pair<double, double> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, HalfPlane>) {
          return {0.0, kPi};
        } else if constexpr (std::is_same_v<T, SlitPlane>) {
          return {0.0, kTwoPi};
        } else {
          return {d.arg_low, d.arg_high};
        }
      },
      domain);
}

std::string_view variant_name(const ModelDomain& domain) {
  static constexpr std::string_view names[] = {"HalfPlane", "SlitPlane", "Sector",
                                               "DoubleSector"};
  return names[domain.index()];
}

std::string_view to_string(BoundKind kind) {
  return kind == BoundKind::Exact ? "Exact" : "LowerBound";
}

std::string_view to_string(BoundMethod method) {
  switch (method) {
    case BoundMethod::Chart: return "chart";
    case BoundMethod::Case1: return "case1";
    case BoundMethod::Case2: return "case2";
    case BoundMethod::Horizontal: return "horizontal";
    case BoundMethod::Monotonicity: return "monotonicity";
  }
  return "unknown";
}

std::vector<double> lifts(const ModelDomain& domain, Complex z) {
  std::vector<double> out;
  if (z == Complex(0.0)) return out;
  const auto [low, high] = angular_range(domain);
  const double a = std::arg(z);
  const auto k_low = static_cast<long>(std::floor((low - a) / kTwoPi));
  const auto k_high = static_cast<long>(std::ceil((high - a) / kTwoPi));
  for (long k = k_low; k <= k_high; ++k) {
    const double theta = a + kTwoPi * static_cast<double>(k);
    if (theta > low && theta < high) out.push_back(theta);
  }
  return out;
}

Complex chart(const ModelDomain& domain, const DomainPoint& p) {
  const ChartPolar w = to_chart(domain, resolve(domain, p));
  return std::polar(std::exp(w.log_rho), w.alpha);
}

DomainPoint chart_inverse(const ModelDomain& domain, Complex w) {
  if (!(w.imag() > 0.0)) {
    throw Error(ErrorKind::OutsideDomain, "chart_inverse: Im w <= 0");
  }
  const double low = angular_range(domain).first;
  const double h = width(domain);
  const double theta = low + std::arg(w) * h / kPi;
  const double r = std::exp(std::log(std::abs(w)) * h / kPi);
  if (std::holds_alternative<DoubleSector>(domain)) return LiftedPoint{r, theta};
  return DomainPoint(std::polar(r, theta));
}

double density(const ModelDomain& domain, const DomainPoint& p) {
  const Polar q = resolve(domain, p);
  const double low = angular_range(domain).first;
  const double k = kPi / width(domain);
  return k / (q.r * std::sin(k * (q.theta - low)));
}

DistanceBound distance_exact(const ModelDomain& domain, const DomainPoint& p1,
                             const DomainPoint& p2) {
  const double d = distance_polar(domain, resolve(domain, p1), resolve(domain, p2));
  if (!std::isfinite(d)) {
    throw Error(ErrorKind::NumericOverflow, "distance_exact: overflow");
  }
  return {d, BoundKind::Exact, BoundMethod::Chart, std::nullopt};
}

double path_length(const ModelDomain& domain, const PathPolyline& path) {
  const auto [low, high] = angular_range(domain);
  double total = 0.0;
  for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
    const Polar start = resolve(domain, path.vertices[s]);
    const Complex a = path.vertices[s].z;
    const Complex b = path.vertices[s + 1].z;
    const Complex delta = b - a;
    // Continuous lift of the argument along the segment.
    auto lifted = [&](double t) -> std::optional<Polar> {
      const Complex z = a + t * delta;
      if (std::abs(z) == 0.0) return std::nullopt;
      return Polar{std::abs(z), start.theta + std::arg(z / a)};
    };
    for (int i = 0; i <= 32; ++i) {
      const auto p = lifted(i / 32.0);
      if (!p || !(p->theta > low && p->theta < high)) {
        throw Error(ErrorKind::PathExitsDomain,
                    "path_length: segment " + std::to_string(s) + " leaves the domain");
      }
    }
    if (const auto& next = path.vertices[s + 1].theta;
        next && std::abs(*next - lifted(1.0)->theta) > 1e-9) {
      throw Error(ErrorKind::PathExitsDomain,
                  "path_length: segment does not reach the next vertex's lift");
    }
    const double speed = std::abs(delta);
    total += integrate_unit([&](double t) {
      const auto p = lifted(t);
      return density(domain, LiftedPoint{p->r, p->theta}) * speed;
    });
  }
  return total;
}

double curve_length(const ModelDomain& domain,
                    const std::function<DomainPoint(double)>& position,
                    const std::function<double(double)>& speed) {
  return integrate_unit(
      [&](double t) { return density(domain, position(t)) * speed(t); });
}

GeodesicSample geodesic_sample(const ModelDomain& domain, const DomainPoint& p1,
                               const DomainPoint& p2, double t) {
  const Complex w1 = chart(domain, p1);
  const Complex w2 = chart(domain, p2);
  const double d = distance_exact(domain, p1, p2).value;
  // Cayley map centered at w1: the geodesic becomes a diameter.
  const Complex u = (w2 - w1) / (w2 - std::conj(w1));
  const Complex dir = std::abs(u) > 0.0 ? u / std::abs(u) : Complex(1.0);
  const double s = t * d;
  const Complex zeta = std::tanh(0.5 * s) * dir;
  const Complex w = (w1 - std::conj(w1) * zeta) / (1.0 - zeta);
  const double sech = 1.0 / std::cosh(0.5 * s);
  const Complex dzeta = 0.5 * d * sech * sech * dir;
  const Complex dw = (w1 - std::conj(w1)) / ((1.0 - zeta) * (1.0 - zeta)) * dzeta;
  const DomainPoint p = chart_inverse(domain, w);
  // chi'(z) = (pi / h) chi(z) / z.
  const double speed = std::abs(dw * p.z * width(domain) / (kPi * w));
  return {p, speed};
}

std::optional<DomainPoint> geodesic_crossing(const ModelDomain& domain,
                                             const DomainPoint& p1,
                                             const DomainPoint& p2,
                                             double ray_arg) {
  auto offset = [&](double t) {
    const DomainPoint p = geodesic_sample(domain, p1, p2, t).point;
    return resolve(domain, p).theta - ray_arg;
  };
  constexpr int kGrid = 512;
  double prev = offset(0.0);
  if (prev == 0.0) return LiftedPoint{resolve(domain, p1).r, ray_arg};
  for (int i = 1; i <= kGrid; ++i) {
    double hi = static_cast<double>(i) / kGrid;
    const double cur = offset(hi);
    if ((prev < 0.0) != (cur < 0.0) || cur == 0.0) {
      double lo = static_cast<double>(i - 1) / kGrid;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((offset(mid) < 0.0) == (prev < 0.0) ? lo : hi) = mid;
      }
      const Polar q = resolve(domain, geodesic_sample(domain, p1, p2, hi).point);
      return LiftedPoint{q.r, ray_arg};
    }
    prev = cur;
  }
  return std::nullopt;
}

DistanceBound bound_case1(double eps, double R, int m) {
  if (!(eps > 0.0 && eps < R)) {
    throw Error(ErrorKind::BadRadii, "bound_case1: need 0 < eps < R");
  }
  return {0.5 * m * (std::log(R) - std::log(eps)), BoundKind::LowerBound,
          BoundMethod::Case1, std::nullopt};
}

DistanceBound bound_case2(Complex z0, Complex z_prime, int m, AngleRange range) {
  if (!(z0.imag() > 0.0) || !(z_prime.imag() > 0.0)) {
    throw Error(ErrorKind::NonPositiveImaginary, "bound_case2: Im must be positive");
  }
  if (!(range.high > range.low) || !(range.low >= 0.0) ||
      !(range.high < kTwoPi / m)) {
    throw Error(ErrorKind::InvalidArgument, "bound_case2: bad angle range");
  }
  CaseConstants c{std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity()};
  constexpr int kSamples = 4096;
  for (int i = 0; i <= kSamples; ++i) {
    // Open at low, closed at high.
    const double t = i == 0 ? range.low + 1e-12 * (range.high - range.low)
                            : range.low + (range.high - range.low) * i / kSamples;
    const double half = 0.5 * m * t;
    c.c1 = std::min(c.c1, half / std::sin(half));
    c.c2 = std::min(c.c2, std::sin(t) / t);
    c.kappa = std::min(c.kappa, m * std::sin(t) / (2.0 * std::sin(half)));
  }
  const double value =
      c.kappa * std::abs(std::log(z_prime.imag()) - std::log(z0.imag()));
  return {value, BoundKind::LowerBound, BoundMethod::Case2, c};
}

DistanceBound bound_case2_horizontal(Complex z0, double C) {
  if (!(z0.real() > 0.5)) {
    throw Error(ErrorKind::SmallRealPart, "bound_case2_horizontal: Re z0 <= 1/2");
  }
  if (!(z0.imag() > 0.0)) {
    throw Error(ErrorKind::NonPositiveImaginary, "bound_case2_horizontal: Im z0 <= 0");
  }
  return {1.0 / (2.0 * std::exp(C) * z0.imag()), BoundKind::LowerBound,
          BoundMethod::Horizontal, std::nullopt};
}

double kobayashi_disk_clearance(const ModelDomain& domain,
                                const DomainPoint& center, double C,
                                double probe_arg) {
  if (!(C >= 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "kobayashi_disk_clearance: C < 0");
  }
  const Polar c = resolve(domain, center);
  const auto [low, high] = angular_range(domain);
  if (!(probe_arg >= low && probe_arg <= high)) {
    throw Error(ErrorKind::InvalidArgument, "kobayashi_disk_clearance: probe outside");
  }
  auto reaches = [&](double phi) {
    if (phi <= low || phi >= high) return false;  // boundary rays are infinitely far
    return distance_to_ray(domain, c, phi) <= C;
  };
  if (reaches(probe_arg) || probe_arg == c.theta) {
    throw Error(ErrorKind::NoClearance, "kobayashi_disk_clearance: disk meets the probe ray");
  }
  double lo = probe_arg;  // clear
  double hi = c.theta;    // inside the disk
  for (int i = 0; i < 200 && std::abs(hi - lo) > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (reaches(mid) ? hi : lo) = mid;
  }
  return std::abs(lo - probe_arg);
}

}  // namespace parabasin
