#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <vector>

#include "parabasin/error.hpp"
#include "parabasin/kobayashi.hpp"
#include "scenarios.hpp"
#include "support.hpp"

using namespace parabasin;
using testing::Complex;

namespace {

constexpr double kPi = std::numbers::pi;
const double kLn2 = std::log(2.0);

// Hyperbolic distance in the upper half-plane, textbook acosh form.
double halfplane_distance(Complex a, Complex b) {
  return std::acosh(1.0 + std::norm(a - b) / (2.0 * a.imag() * b.imag()));
}

ErrorKind kind_of(auto&& call) {
  try {
    call();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::IoFailure;
}

std::vector<ModelDomain> sample_domains() {
  return {HalfPlane{}, SlitPlane{}, Sector{0.3, 2.1}, Sector{-1.0, 1.0 + kPi},
          DoubleSector{-0.1, 2.0 * kPi + 0.1}, DoubleSector{1.0, 1.0 + 3.5 * kPi}};
}

DomainPoint random_point(const ModelDomain& domain, double margin = 0.02) {
  const auto [low, high] = angular_range(domain);
  const double w = high - low;
  const double r = std::exp(testing::uniform(-3.0, 3.0));
  const double theta = testing::uniform(low + margin * w, high - margin * w);
  return LiftedPoint{r, theta};
}

double lifted_arg(const ModelDomain& domain, const DomainPoint& p) {
  return p.theta ? *p.theta : lifts(domain, p.z).front();
}

double geodesic_length(const ModelDomain& domain, const DomainPoint& a,
                       const DomainPoint& b) {
  return curve_length(
      domain, [&](double t) { return geodesic_sample(domain, a, b, t).point; },
      [&](double t) { return geodesic_sample(domain, a, b, t).speed; });
}

}  // namespace

TEST_CASE("density examples") {
  CHECK(density(HalfPlane{}, Complex(0.0, 1.0)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(density(SlitPlane{}, -1.0) == doctest::Approx(0.5).epsilon(1e-15));
  // Sector of opening pi is the half-plane itself, so the oracle is 1/Im z.
  const Complex z = std::polar(1.0, kPi / 4.0);
  CHECK(density(Sector{0.0, kPi}, z) == doctest::Approx(1.0 / z.imag()).epsilon(1e-14));
  CHECK(density(Sector{0.0, kPi}, z) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // Slit plane: 1/(2 r sin(theta/2)).
  for (int i = 0; i < 1000; ++i) {
    const double r = std::exp(testing::uniform(-5.0, 5.0));
    const double t = testing::uniform(0.01, 2.0 * kPi - 0.01);
    CHECK(density(SlitPlane{}, std::polar(r, t)) ==
          doctest::Approx(1.0 / (2.0 * r * std::sin(t / 2.0))).epsilon(1e-12));
  }
  CHECK(kind_of([] { density(HalfPlane{}, Complex(1.0, -1.0)); }) == ErrorKind::OutsideDomain);
  CHECK(kind_of([] { density(SlitPlane{}, 2.0); }) == ErrorKind::OutsideDomain);
}

TEST_CASE("property: density blows up at the boundary") {
  const Sector s{0.2, 1.7};
  double previous = 0.0;
  for (double gap = 0.5; gap > 1e-8; gap /= 4.0) {
    const double d = density(s, std::polar(1.0, 0.2 + gap));
    CHECK(d > previous);
    previous = d;
  }
  CHECK(previous > 1e6);
}

TEST_CASE("exact distance examples") {
  CHECK(distance_exact(HalfPlane{}, Complex(0, 1), Complex(0, 2)).value ==
        doctest::Approx(kLn2).epsilon(1e-15));
  CHECK(distance_exact(SlitPlane{}, -1.0, -4.0).value == doctest::Approx(kLn2).epsilon(1e-15));
  const Complex z(0.3, -2.0);
  CHECK(distance_exact(SlitPlane{}, z, z).value == 0.0);
  const auto b = distance_exact(SlitPlane{}, -1.0, -4.0);
  CHECK(b.kind == BoundKind::Exact);
  CHECK(b.method == BoundMethod::Chart);
}

TEST_CASE("property: half-plane distance matches the acosh formula") {
  for (int i = 0; i < 1000; ++i) {
    const Complex a(testing::uniform(-3, 3), std::exp(testing::uniform(-3, 3)));
    const Complex b(testing::uniform(-3, 3), std::exp(testing::uniform(-3, 3)));
    const double expected = halfplane_distance(a, b);
    CHECK(distance_exact(HalfPlane{}, a, b).value ==
          doctest::Approx(expected).epsilon(1e-10));
  }
}

TEST_CASE("property: slit plane equals the half-plane through the square root") {
  for (int i = 0; i < 1000; ++i) {
    const Complex a = testing::random_polar(1e-3, 1e3, 0.01, 2.0 * kPi - 0.01);
    const Complex b = testing::random_polar(1e-3, 1e3, 0.01, 2.0 * kPi - 0.01);
    auto root = [](Complex z) {
      double t = std::arg(z);
      if (t < 0.0) t += 2.0 * kPi;
      return std::polar(std::sqrt(std::abs(z)), t / 2.0);
    };
    CHECK(distance_exact(SlitPlane{}, a, b).value ==
          doctest::Approx(halfplane_distance(root(a), root(b))).epsilon(1e-9));
  }
}

TEST_CASE("path length examples") {
  CHECK(std::abs(path_length(HalfPlane{}, {{Complex(0, 1), Complex(0, 2)}}) - kLn2) < 1e-9);
  CHECK(path_length(HalfPlane{}, {{Complex(0, 1), Complex(1, 1), Complex(0, 2)}}) > kLn2);
  CHECK(std::abs(path_length(SlitPlane{}, {{-1.0, -2.0, -4.0}}) - kLn2) < 1e-9);
  CHECK(kind_of([] { path_length(SlitPlane{}, {{Complex(1, 1), Complex(1, -1)}}); }) ==
        ErrorKind::PathExitsDomain);
  CHECK(kind_of([] { path_length(HalfPlane{}, {{Complex(-1, 1), Complex(1, 1), Complex(0, -1)}}); }) ==
        ErrorKind::PathExitsDomain);
}

TEST_CASE("property: chart round trips") {
  for (const ModelDomain& domain : sample_domains()) {
    for (int i = 0; i < 10000; ++i) {
      const Complex w = testing::random_polar(1e-2, 1e2, 0.02, kPi - 0.02);
      const Complex back = chart(domain, chart_inverse(domain, w));
      CHECK(std::abs(back - w) < 1e-12 * std::abs(w));
    }
  }
}

TEST_CASE("lifts") {
  const DoubleSector d{-0.1, 2.0 * kPi + 0.1};
  CHECK(lifts(d, -1.0).size() == 1);
  CHECK(lifts(d, Complex(1.0, 0.05)).size() == 2);
  CHECK(lifts(SlitPlane{}, 1.0).empty());
  CHECK(lifts(Sector{0.0, 1.0}, -1.0).empty());
  CHECK(kind_of([&] { density(d, Complex(1.0, 0.05)); }) == ErrorKind::InvalidArgument);
  CHECK(density(d, LiftedPoint{1.0, 0.05}) > 0.0);
}

TEST_CASE("property: geodesics realize the exact distance") {
  for (const ModelDomain& domain : sample_domains()) {
    for (int i = 0; i < 1000; ++i) {
      const DomainPoint a = random_point(domain);
      const DomainPoint b = random_point(domain);
      const double exact = distance_exact(domain, a, b).value;
      CHECK(std::abs(geodesic_length(domain, a, b) - exact) < 1e-6);
    }
  }
}

TEST_CASE("property: polylines are never shorter than the distance") {
  // Vertices in convex sub-wedges so every segment stays inside.
  const std::vector<std::pair<ModelDomain, std::pair<double, double>>> cases = {
      {HalfPlane{}, {0.05, kPi - 0.05}},
      {SlitPlane{}, {0.5 * kPi + 0.05, 1.5 * kPi - 0.05}},
      {Sector{0.3, 2.1}, {0.35, 2.05}},
      {DoubleSector{-0.1, 2.0 * kPi + 0.1}, {kPi - 1.4, kPi + 1.4}}};
  for (const auto& [domain, wedge] : cases) {
    for (int i = 0; i < 1000; ++i) {
      PathPolyline path;
      const int n = testing::uniform_int(2, 6);
      for (int k = 0; k < n; ++k) {
        path.vertices.push_back(testing::random_polar(0.05, 20.0, wedge.first, wedge.second));
      }
      const double exact =
          distance_exact(domain, path.vertices.front(), path.vertices.back()).value;
      CHECK(path_length(domain, path) >= exact - 1e-9);
    }
  }
}

TEST_CASE("property: homogeneity") {
  const std::vector<ModelDomain> domains = {SlitPlane{}, Sector{0.3, 2.1},
                                            DoubleSector{-0.1, 2.0 * kPi + 0.1}};
  for (const ModelDomain& domain : domains) {
    for (int i = 0; i < 1000; ++i) {
      const DomainPoint a = random_point(domain);
      const DomainPoint b = random_point(domain);
      const double lambda = std::pow(10.0, testing::uniform(-3.0, 3.0));
      const LiftedPoint sa{lambda * std::abs(a.z), *a.theta};
      const LiftedPoint sb{lambda * std::abs(b.z), *b.theta};
      CHECK(std::abs(distance_exact(domain, sa, sb).value -
                     distance_exact(domain, a, b).value) < 1e-12);
    }
  }
}

TEST_CASE("property: domain monotonicity") {
  const DoubleSector wide{-0.1, 2.0 * kPi + 0.1};
  const Sector narrow{0.5, 2.5};
  for (int i = 0; i < 1000; ++i) {
    const double t1 = testing::uniform(0.01, 2.0 * kPi - 0.01);
    const double t2 = testing::uniform(0.01, 2.0 * kPi - 0.01);
    const Complex a = std::polar(std::exp(testing::uniform(-3, 3)), t1);
    const Complex b = std::polar(std::exp(testing::uniform(-3, 3)), t2);
    const double slit = distance_exact(SlitPlane{}, a, b).value;
    const double dbl =
        distance_exact(wide, LiftedPoint{std::abs(a), t1}, LiftedPoint{std::abs(b), t2}).value;
    CHECK(dbl < slit);

    const Complex c = testing::random_polar(0.05, 20.0, 0.55, 2.45);
    const Complex d = testing::random_polar(0.05, 20.0, 0.55, 2.45);
    CHECK(distance_exact(narrow, c, d).value >= distance_exact(SlitPlane{}, c, d).value - 1e-12);
  }
}

TEST_CASE("property: holomorphic self-maps do not increase distance") {
  for (int i = 0; i < 1000; ++i) {
    const Complex a(testing::uniform(-5, 5), std::exp(testing::uniform(-2, 2)));
    const Complex b(testing::uniform(-5, 5), std::exp(testing::uniform(-2, 2)));
    const double d = distance_exact(HalfPlane{}, a, b).value;
    const Complex shift(0.0, 1.0);
    CHECK(distance_exact(HalfPlane{}, a + shift, b + shift).value <= d + 1e-14);

    double p = testing::uniform(-2, 2), q = testing::uniform(-2, 2);
    double r = testing::uniform(-2, 2), s = testing::uniform(-2, 2);
    if (p * s - q * r < 0.0) std::swap(p, q), std::swap(r, s);
    if (p * s - q * r < 1e-2) continue;
    auto mobius = [&](Complex z) { return (p * z + q) / (r * z + s); };
    CHECK(std::abs(distance_exact(HalfPlane{}, mobius(a), mobius(b)).value - d) <
          1e-12 * std::max(1.0, d) * 100.0);
  }
}

TEST_CASE("case 1 bound") {
  CHECK(bound_case1(std::exp(-2.0), 1.0, 1).value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(bound_case1(0.05, 0.5, 2).value == doctest::Approx(std::log(10.0)).epsilon(1e-15));
  const double R = 0.3;
  const double C = 2.5;
  CHECK(std::abs(bound_case1(R * std::exp(-2.0 * C / 3), R, 3).value - C) < 1e-12);
  CHECK(kind_of([] { bound_case1(1.0, 1.0, 1); }) == ErrorKind::BadRadii);
  CHECK(kind_of([] { bound_case1(0.0, 1.0, 1); }) == ErrorKind::BadRadii);
  CHECK(bound_case1(0.1, 1.0, 1).kind == BoundKind::LowerBound);
}

TEST_CASE("case 2 bound and its constants") {
  const Complex z0(0.9, 1e-3);
  const Complex z1(0.0, 1.0);
  const auto b = bound_case2(z0, z1, 1, {0.0, kPi / 2.0});
  REQUIRE(b.constants);
  CHECK(b.constants->kappa == doctest::Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
  CHECK(b.constants->c2 == doctest::Approx(2.0 / kPi).epsilon(1e-12));
  CHECK(b.constants->c1 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(b.value == doctest::Approx(std::sqrt(2.0) / 2.0 * std::log(1e3)).epsilon(1e-12));

  const double C = 1.7;
  const auto same = bound_case2(z0, Complex(0.5, z0.imag()), 1, {0.0, kPi / 2.0});
  CHECK(same.value == 0.0);
  const auto scaled = bound_case2(z0, Complex(0.5, z0.imag() * std::exp(C)), 2, {0.0, kPi / 4.0});
  // m = 2 on (0, pi/4]: m sin t / (2 sin t) is identically 1.
  CHECK(scaled.constants->kappa == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(scaled.value == doctest::Approx(C).epsilon(1e-12));

  CHECK(kind_of([&] { bound_case2(Complex(1.0, 0.0), z1, 1, {0.0, 1.0}); }) ==
        ErrorKind::NonPositiveImaginary);
}

TEST_CASE("horizontal crossing bound") {
  const double C = 2.0;
  const double im = 1.0 / (2.0 * C * std::exp(C));
  CHECK(bound_case2_horizontal(Complex(0.9, im), C).value == doctest::Approx(C).epsilon(1e-14));
  CHECK(bound_case2_horizontal(Complex(0.9, im / 2.0), C).value ==
        doctest::Approx(2.0 * C).epsilon(1e-14));
  CHECK(bound_case2_horizontal(Complex(0.9, 0.01), 2.0).value ==
        doctest::Approx(1.0 / (2.0 * std::exp(2.0) * 0.01)).epsilon(1e-14));
  CHECK(bound_case2_horizontal(Complex(0.9, 0.01), 2.0).value == doctest::Approx(6.7668).epsilon(1e-4));
  CHECK(kind_of([] { bound_case2_horizontal(Complex(0.5, 0.01), 1.0); }) ==
        ErrorKind::SmallRealPart);
}

TEST_CASE("property: hand estimates never exceed the exact distance") {
  std::map<BoundMethod, int> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto s = testing::random_bound_scenario();
    const double exact = distance_exact(s.params.comparison_domain, s.z0, s.q).value;
    for (const auto& b : case_bounds(s.params, s.q)) {
      ++seen[b.method];
      CHECK(b.value - exact <= 1e-12 * std::max(1.0, exact));
    }
  }
  CHECK(seen[BoundMethod::Case1] > 50);
  CHECK(seen[BoundMethod::Case2] > 50);
}

TEST_CASE("property: horizontal estimate below every in-band crossing path") {
  for (int i = 0; i < 1000; ++i) {
    const double C = testing::uniform(1.0, 4.0);
    const double cap = 1.0 / (2.0 * C * std::exp(C));
    const double t = testing::uniform(0.05, 0.9) * std::asin(cap);
    const Complex z0 = std::polar(1.0, t);
    const double lo = z0.imag() / std::exp(C);
    const double hi = z0.imag() * std::exp(C);
    // Monotone in Re, random heights inside the band, ends on the imaginary axis.
    PathPolyline path{{z0}};
    const int n = testing::uniform_int(1, 8);
    for (int k = 1; k <= n; ++k) {
      const double x = z0.real() * (1.0 - static_cast<double>(k) / (n + 1));
      path.vertices.push_back(Complex(x, std::exp(testing::uniform(std::log(lo), std::log(hi)))));
    }
    path.vertices.push_back(Complex(0.0, std::exp(testing::uniform(std::log(lo), std::log(hi)))));
    CHECK(bound_case2_horizontal(z0, C).value <= path_length(SlitPlane{}, path));
  }
}

TEST_CASE("geodesic crossing") {
  // Half-plane geodesic from -1+i to 1+i is the unit circle; it meets the
  // imaginary axis at i.
  const auto hit = geodesic_crossing(HalfPlane{}, Complex(-1, 1), Complex(1, 1), kPi / 2.0);
  REQUIRE(hit);
  CHECK(std::abs(hit->z - Complex(0.0, std::sqrt(2.0))) < 1e-9);
  CHECK_FALSE(geodesic_crossing(HalfPlane{}, Complex(1, 1), Complex(2, 1), kPi / 2.0));
}

TEST_CASE("disk clearance") {
  // The ray at angle t is a hypercycle at distance acosh(1/sin t) from the
  // imaginary axis, so the disk of radius 1 about i misses it iff cos t > tanh 1.
  const double t = kobayashi_disk_clearance(HalfPlane{}, Complex(0, 1), 1.0, 0.0);
  CHECK(t == doctest::Approx(kPi / 2.0 - std::asin(std::tanh(1.0))).epsilon(1e-10));
  CHECK(t > 0.0);
  // The disk stays above Im = e^{-1}, so rays with small angle clear it.
  CHECK(std::tan(t) > 0.0);

  const double zero = kobayashi_disk_clearance(HalfPlane{}, Complex(1, 1), 0.0, 0.0);
  CHECK(zero == doctest::Approx(kPi / 4.0).epsilon(1e-12));

  const double theta0 = 0.02;
  const double slit = kobayashi_disk_clearance(SlitPlane{}, std::polar(1.0, 1.5 * theta0), 2.0, 0.0);
  CHECK(slit > 0.0);
  CHECK(slit < 1.5 * theta0);

  CHECK(kind_of([] { kobayashi_disk_clearance(HalfPlane{}, Complex(0, 1), 1.0, kPi / 2.0); }) ==
        ErrorKind::NoClearance);
  CHECK(kind_of([] { kobayashi_disk_clearance(HalfPlane{}, Complex(0, 1), 1.0, 1.0); }) ==
        ErrorKind::NoClearance);
}

TEST_CASE("boundary guards") {
  CHECK(kind_of([] { distance_exact(HalfPlane{}, Complex(0.0, 1e-301), Complex(0, 1)); }) ==
        ErrorKind::NumericOverflow);
  CHECK(kind_of([] { distance_exact(SlitPlane{}, std::polar(1.0, 1e-14), -1.0); }) ==
        ErrorKind::OutsideDomain);
  CHECK(kind_of([] { chart_inverse(HalfPlane{}, Complex(1.0, -1.0)); }) ==
        ErrorKind::OutsideDomain);
  CHECK(kind_of([] {
          distance_exact(DoubleSector{0.0, 7.0}, LiftedPoint{1.0, 7.5}, -1.0);
        }) == ErrorKind::OutsideDomain);
}

TEST_CASE("names") {
  CHECK(variant_name(SlitPlane{}) == "SlitPlane");
  CHECK(variant_name(DoubleSector{}) == "DoubleSector");
  CHECK(to_string(BoundMethod::Case2) == "case2");
  CHECK(to_string(BoundKind::LowerBound) == "LowerBound");
  const auto [low, high] = angular_range(Sector{0.1, 0.7});
  CHECK(low == 0.1);
  CHECK(high == 0.7);
}
