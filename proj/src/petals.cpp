#include "parabasin/petals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>

namespace parabasin {

namespace {

constexpr double kPi = std::numbers::pi;

double radical_inverse(std::size_t index, std::size_t base) {
  double result = 0.0;
  double scale = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += static_cast<double>(index % base) * scale;
    index /= base;
    scale /= static_cast<double>(base);
  }
  return result;
}

Complex principal_root(const ParabolicMap& f, Complex omega) {
  const Complex rhs = -1.0 / (static_cast<double>(f.m()) * f.a() * omega);
  return std::polar(std::pow(std::abs(rhs), 1.0 / f.m()), std::arg(rhs) / f.m());
}

// z-plane radius matching an omega-plane radius.
double z_radius(const ParabolicMap& f, double rho) {
  return std::pow(f.m() * std::abs(f.a()) * rho, -1.0 / f.m());
}

}  // namespace

FatouChartValue fatou_chart(const ParabolicMap& f, Complex z) {
  if (z == Complex(0.0)) {
    throw Error(ErrorKind::OriginInput, "fatou_chart: z = 0");
  }
  const int m = f.m();
  const Complex omega = -1.0 / (static_cast<double>(m) * f.a() * std::pow(z, m));
  const Complex root = principal_root(f, omega);
  const double turns = std::arg(z / root) * m / (2.0 * kPi);
  int sheet = static_cast<int>(std::lround(turns)) % m;
  if (sheet < 0) sheet += m;
  return {omega, sheet};
}

Complex fatou_chart_inverse(const ParabolicMap& f, const FatouChartValue& value) {
  if (value.omega == Complex(0.0)) {
    throw Error(ErrorKind::OriginInput, "fatou_chart_inverse: omega = 0");
  }
  return principal_root(f, value.omega) *
         std::polar(1.0, 2.0 * kPi * value.sheet / f.m());
}

Complex conjugated_displacement(const ParabolicMap& f, Complex omega, int sheet) {
  const Complex z = fatou_chart_inverse(f, {omega, sheet});
  // f(z) = z (1 + g), g = sum_{k > m} c_k z^{k-1}.
  const auto c = f.coefficients();
  Complex g = 0.0;
  for (std::size_t k = c.size(); k-- > static_cast<std::size_t>(f.m()) + 1;) {
    g = g * z + c[k];
  }
  g *= std::pow(z, f.m());
  // (1 + g)^m - 1 summed binomially, no cancellation for small g.
  Complex p = 0.0;
  Complex power = 1.0;
  double binom = 1.0;
  for (int k = 1; k <= f.m(); ++k) {
    binom = binom * (f.m() - k + 1) / k;
    power *= g;
    p += binom * power;
  }
  return -omega * p / (1.0 + p);
}

Complex conjugated_map(const ParabolicMap& f, Complex omega, int sheet) {
  return omega + conjugated_displacement(f, omega, sheet);
}

int sheet_of_direction(const ParabolicMap& f, int direction) {
  return fatou_chart(f, f.attraction().at(direction)).sheet;
}

double estimate_remainder(const ParabolicMap& f, double rho, std::size_t samples) {
  if (!(rho > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "estimate_remainder: rho <= 0");
  }
  std::size_t n_angle = static_cast<std::size_t>(std::sqrt(static_cast<double>(samples)));
  n_angle = std::max<std::size_t>(8, n_angle + (n_angle % 2));
  const std::size_t n_radius = std::max<std::size_t>(2, samples / n_angle);
  double sup = 0.0;
  for (int sheet = 0; sheet < f.m(); ++sheet) {
    for (std::size_t i = 0; i < n_radius; ++i) {
      const double radius =
          rho * std::pow(10.0, 4.0 * static_cast<double>(i) / (n_radius - 1));
      for (std::size_t k = 0; k < n_angle; ++k) {
        // Even count: the grid contains both 0 and pi.
        const double angle = -kPi + 2.0 * kPi * static_cast<double>(k + 1) / n_angle;
        const Complex omega = std::polar(radius, angle);
        const double value = std::abs(conjugated_displacement(f, omega, sheet) - 1.0);
        if (!std::isfinite(value)) return std::numeric_limits<double>::infinity();
        sup = std::max(sup, value);
      }
    }
  }
  return 2.0 * sup;
}

PacManConstruction construct_pacman(const ParabolicMap& f, double theta0,
                                    std::size_t samples) {
  if (!(theta0 > 0.0 && theta0 < kPi / 6.0)) {
    throw Error(ErrorKind::DegenerateAngle,
                "construct_pacman: theta0 must lie in (0, pi/6)");
  }
  PacManConstruction c;
  c.theta0 = theta0;
  c.omega_gap = f.m() * theta0;
  const double target = c.omega_gap / 3.0;
  auto passes = [&](double rho) {
    return estimate_remainder(f, rho, samples) < target;
  };

  double hi = 1.0;
  while (!passes(hi)) {
    hi *= 2.0;
    if (hi > 1e12) {
      throw Error(ErrorKind::ConstructionFailed,
                  "construct_pacman: remainder never drops below the gap bound");
    }
  }
  double lo = hi / 2.0;
  if (hi > 1.0) {
    for (int i = 0; i < 60 && hi - lo > 1e-9 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      (passes(mid) ? hi : lo) = mid;
    }
  }
  const double s = std::sin(0.5 * c.omega_gap);
  c.rho0 = hi;
  c.rho1 = c.rho0 / s;
  c.rho2 = c.rho1 / s;
  c.remainder_bound = estimate_remainder(f, c.rho0, samples);
  c.r0 = z_radius(f, c.rho0);
  c.R0 = z_radius(f, c.rho1);
  c.R0_prime = z_radius(f, c.rho2);
  c.A0 = std::polar(c.rho1, kPi - c.omega_gap);
  c.B0 = c.rho1;
  c.A = std::polar(c.rho2, kPi - c.omega_gap);
  c.B = c.rho2;
  return c;
}

std::vector<PacManDomain> pacman_petals(const ParabolicMap& f,
                                        const PacManConstruction& construction,
                                        double radius) {
  std::vector<PacManDomain> petals;
  for (const Complex& v : f.attraction()) {
    const double bisector = std::arg(v);
    petals.push_back({std::cos(bisector) < 0.0 ? Orientation::Left : Orientation::Right,
                      radius, construction.theta0, 2.0 * kPi / f.m(), bisector});
  }
  return petals;
}

std::vector<PacManDomain> membership_petals(const ParabolicMap& f) {
  static std::mutex mutex;
  static std::map<std::vector<std::pair<double, double>>, std::vector<PacManDomain>> cache;
  std::vector<std::pair<double, double>> key;
  for (const Complex& c : f.coefficients()) key.emplace_back(c.real(), c.imag());
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const PacManConstruction c = construct_pacman(f, 0.5);
  auto petals = pacman_petals(f, c, c.R0_prime);
  std::lock_guard lock(mutex);
  cache.emplace(std::move(key), petals);
  return petals;
}

InvarianceReport check_invariance(const ParabolicMap& f,
                                  const PacManDomain& start,
                                  const PacManDomain& target,
                                  std::size_t n_steps, std::size_t samples) {
  InvarianceReport report;
  report.samples = samples;
  report.steps = n_steps;
  report.worst_margin = std::numeric_limits<double>::infinity();
  const std::size_t boundary = samples / 10;
  const double aperture = start.half_aperture();
  constexpr double kInset = 1e-6;

  for (std::size_t i = 0; i < samples; ++i) {
    const double u = radical_inverse(i + 1, 2);
    const double v = radical_inverse(i + 1, 3);
    double r;
    double offset;
    if (i < boundary) {
      // Cycle over the outer arc and the two gap rays.
      switch (i % 3) {
        case 0:
          r = start.radius * (1.0 - kInset);
          offset = (2.0 * v - 1.0) * aperture * (1.0 - kInset);
          break;
        case 1:
          r = start.radius * u;
          offset = aperture * (1.0 - kInset);
          break;
        default:
          r = start.radius * u;
          offset = -aperture * (1.0 - kInset);
          break;
      }
    } else {
      r = start.radius * std::sqrt(u);
      offset = (2.0 * v - 1.0) * aperture;
    }
    if (!(r > 0.0)) continue;
    Complex z = std::polar(r, start.bisector_arg + offset);
    bool left = false;
    for (std::size_t n = 1; n <= n_steps; ++n) {
      z = f(z);
      const double margin = target.relative_margin(z);
      report.worst_margin = std::min(report.worst_margin, margin);
      if (!target.contains(z)) {
        left = true;
        break;
      }
    }
    if (left) ++report.violations;
  }
  return report;
}

InvarianceReport check_petal_invariance(const ParabolicMap& f,
                                        const PacManConstruction& construction,
                                        std::size_t n_steps,
                                        std::size_t samples, int direction) {
  const auto start = pacman_petals(f, construction, construction.R0_prime);
  const auto target = pacman_petals(f, construction, construction.R0);
  return check_invariance(f, start.at(direction), target.at(direction), n_steps,
                          samples);
}

}  // namespace parabasin
