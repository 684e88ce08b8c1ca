// Desk-scale acceptance run: one PASS/FAIL line per criterion.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "parabasin/kobayashi.hpp"
#include "parabasin/parabolic.hpp"
#include "parabasin/petals.hpp"
#include "parabasin/raster.hpp"
#include "parabasin/verifier.hpp"
#include "scenarios.hpp"
#include "support.hpp"

using namespace parabasin;
using testing::Complex;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  failures += !ok;
}

std::string fmt(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof buffer, format, args...);
  return buffer;
}

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t).count();
}

double geodesic_length(const ModelDomain& domain, const DomainPoint& a, const DomainPoint& b) {
  return curve_length(
      domain, [&](double t) { return geodesic_sample(domain, a, b, t).point; },
      [&](double t) { return geodesic_sample(domain, a, b, t).speed; });
}

DomainPoint random_point(const ModelDomain& domain) {
  const auto [low, high] = angular_range(domain);
  const double w = high - low;
  return LiftedPoint{std::exp(testing::uniform(-3.0, 3.0)),
                     testing::uniform(low + 0.02 * w, high - 0.02 * w)};
}

const ParabolicMap& quadratic() {
  static const ParabolicMap f = analyze_parabolic({0.0, 1.0, 1.0});
  return f;
}

TheoremCertificate theorem_a_certificate;

void theorem_a() {
  const auto start = std::chrono::steady_clock::now();
  theorem_a_certificate = verify_theorem(quadratic(), 2.0, -0.5, 20, 10, 0);
  const double elapsed = seconds_since(start);
  const auto& c2 = theorem_a_certificate;
  const auto c4 = verify_theorem(quadratic(), 4.0, -0.5, 20, 10, 0);
  const bool slit = std::holds_alternative<SlitPlane>(c2.params.comparison_domain);
  const bool ok = c2.pass && c2.global_min >= 2.0 && slit && c2.uncertifiable.empty() &&
                  elapsed < 60.0 && c4.pass && c4.global_min >= 4.0 &&
                  c4.params.epsilon < c2.params.epsilon && c4.params.theta0 < c2.params.theta0;
  report(1, ok,
         fmt("z+z^2, q=-1/2, k<=20, l<=10: %zu certified, C=2 min %.4f (%.1f s), "
             "C=4 min %.4f, base-point margin violations %zu",
             c2.bounds.size(), c2.global_min, elapsed, c4.global_min, c2.remark3_violations));
}

void theorem_b() {
  const auto f = analyze_parabolic({0.0, 1.0, 0.0, 1.0});
  int j = 0;
  for (; j < f.m(); ++j) {
    if (std::abs(f.attraction()[j] - Complex(0.0, 1.0 / std::sqrt(2.0))) < 1e-12) break;
  }
  const Complex q = project_onto_ray(Complex(0.0, 0.3), f.attraction()[j]);
  const auto cert = verify_theorem(f, 2.0, q, 15, 8, j);
  const auto [low, high] = angular_range(cert.params.comparison_domain);
  const bool sector = std::holds_alternative<Sector>(cert.params.comparison_domain) &&
                      std::abs(high - low - kPi) < 1e-12;
  report(2, cert.pass && sector && cert.global_min >= 2.0,
         fmt("z+z^3, v=i/sqrt2, q=0.3i, k<=15, l<=8: %zu certified, min %.4f, opening %.6f",
             cert.bounds.size(), cert.global_min, high - low));
}

void metric_suite() {
  const double ln2 = std::log(2.0);
  const double h_exact = distance_exact(HalfPlane{}, Complex(0, 1), Complex(0, 2)).value;
  const double h_quad = geodesic_length(HalfPlane{}, Complex(0, 1), Complex(0, 2));
  const double s_exact = distance_exact(SlitPlane{}, -1.0, -4.0).value;
  const double s_quad = geodesic_length(SlitPlane{}, -1.0, -4.0);
  const double s_path = path_length(SlitPlane{}, {{-1.0, -2.0, -4.0}});
  double worst_pair = 0.0;
  const std::vector<ModelDomain> domains = {HalfPlane{}, SlitPlane{}, Sector{0.3, 2.1},
                                            DoubleSector{-0.1, 2.0 * kPi + 0.1}};
  for (int i = 0; i < 1000; ++i) {
    const ModelDomain& d = domains[i % domains.size()];
    const DomainPoint a = random_point(d);
    const DomainPoint b = random_point(d);
    worst_pair = std::max(worst_pair,
                          std::abs(geodesic_length(d, a, b) - distance_exact(d, a, b).value));
  }
  const double worst_closed = std::max({std::abs(h_exact - ln2), std::abs(s_exact - ln2),
                                        std::abs(h_quad - h_exact), std::abs(s_quad - s_exact),
                                        std::abs(s_path - s_exact)});
  report(3, worst_closed < 1e-9 && worst_pair < 1e-6,
         fmt("closed forms vs quadrature max error %.2e; 1000 random pairs max error %.2e",
             worst_closed, worst_pair));
}

void homogeneity_monotonicity() {
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const Complex a = testing::random_polar(1e-2, 1e2, 0.01, 2.0 * kPi - 0.01);
    const Complex b = testing::random_polar(1e-2, 1e2, 0.01, 2.0 * kPi - 0.01);
    const double lambda = std::pow(10.0, testing::uniform(-3.0, 3.0));
    worst = std::max(worst, std::abs(distance_exact(SlitPlane{}, lambda * a, lambda * b).value -
                                     distance_exact(SlitPlane{}, a, b).value));
  }
  const DoubleSector wide{-0.1, 2.0 * kPi + 0.1};
  int strict = 0;
  for (int i = 0; i < 1000; ++i) {
    const double t1 = testing::uniform(0.01, 2.0 * kPi - 0.01);
    const double t2 = testing::uniform(0.01, 2.0 * kPi - 0.01);
    const double r1 = std::exp(testing::uniform(-3, 3));
    const double r2 = std::exp(testing::uniform(-3, 3));
    const double slit = distance_exact(SlitPlane{}, std::polar(r1, t1), std::polar(r2, t2)).value;
    const double dbl = distance_exact(wide, LiftedPoint{r1, t1}, LiftedPoint{r2, t2}).value;
    strict += dbl < slit;
  }
  report(4, worst < 1e-12 && strict == 1000,
         fmt("scaling error max %.2e over 1000 pairs; double sector strictly smaller on %d/1000",
             worst, strict));
}

void asymptotics() {
  const auto orbit = forward_orbit(quadratic(), -0.5, 10000);
  const double k = 10000.0;
  const double e = std::abs(k * orbit.points[10000] + 1.0);
  const double bound = 2.0 * std::log(k) / k;
  report(5, e <= bound, fmt("|k z_k + 1| at k=1e4 = %.4e <= %.4e", e, bound));
}

void remainder_oracle() {
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Complex omega = testing::random_polar(2.0, 1e6, -kPi, kPi);
    const Complex exact = omega * omega / (omega - 1.0);
    worst = std::max(worst, std::abs(conjugated_map(quadratic(), omega, 0) - exact) / std::abs(exact));
  }
  const double estimate = estimate_remainder(quadratic(), 31.0, 4096);
  const bool bracket = estimate >= 1.0 / 30.0 && estimate <= 2.0 / 30.0 + 1e-12;
  report(6, worst < 1e-12 && bracket,
         fmt("F vs w^2/(w-1) max relative error %.2e; estimate at rho=31 = %.6f in [1/30, 2/30]",
             worst, estimate));
}

void invariance() {
  const double theta0 = 0.5 / (4.0 * std::exp(2.0));
  const auto c = construct_pacman(quadratic(), theta0);
  const auto r = check_petal_invariance(quadratic(), c, 1000, 10000);
  report(7, r.violations == 0,
         fmt("theta0=%.6f, R0'=%.3e: %zu exits over %zu points x %zu steps", theta0, c.R0_prime,
             r.violations, r.samples, r.steps));
}

void bound_soundness() {
  double worst = -std::numeric_limits<double>::infinity();
  int bounds = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = testing::random_bound_scenario();
    const double exact = distance_exact(s.params.comparison_domain, s.z0, s.q).value;
    for (const auto& b : case_bounds(s.params, s.q)) {
      worst = std::max(worst, (b.value - exact) / std::max(1.0, exact));
      ++bounds;
    }
  }
  report(8, worst <= 1e-12,
         fmt("%d case1/case2/horizontal bounds over 1000 scenarios; max excess %.3e", bounds,
             worst));
}

void disjointness() {
  const auto f = analyze_parabolic({0.0, 1.0, 1.0, 1.0});
  const auto a = prop3_disjointness(f, 0.3, 0.3, 1024);
  const auto b = prop3_disjointness(f, 0.3, 0.3, 2048);
  report(9, a.disjoint && a.overlap_pixels == 0 && b.disjoint == a.disjoint,
         fmt("z+z^2+z^3, R=0.3, theta0=0.3: 1024 overlap %zu (S1 %zu, S2 %zu); 2048 overlap %zu",
             a.overlap_pixels, a.s1_pixels, a.s2_pixels, b.overlap_pixels));
}

void closure() {
  const auto r = corollary_d_closure(quadratic(), theorem_a_certificate, 3);
  report(10, r.status == ClosureStatus::Ok && r.failures.empty() && r.preimages_checked == 14,
         fmt("depth 3: %zu preimages, %zu certified images checked, %zu failures",
             r.preimages_checked, r.q_points_checked, r.failures.size()));
}

}  // namespace

int main() {
  const std::vector<std::function<void()>> criteria = {
      theorem_a, theorem_b, metric_suite, homogeneity_monotonicity, asymptotics,
      remainder_oracle, invariance, bound_soundness, disjointness, closure};
  for (const auto& criterion : criteria) {
    try {
      criterion();
    } catch (const std::exception& e) {
      std::printf("[FAIL] error: %s\n", e.what());
      ++failures;
    }
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
