#include "parabasin/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <unordered_map>

#include "parabasin/petals.hpp"
#include "parabasin/roots.hpp"

namespace parabasin {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double positive_arg(Complex z) {
  const double a = std::arg(z);
  return a < 0.0 ? a + kTwoPi : a;
}

// Distance between two angles on the circle.
double angular_distance(double a, double b) {
  const double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

// Zeroes components that are pure rounding noise, so that directions such as
// -1 or i/sqrt(2) come out exact.
Complex snap(Complex v) {
  const double scale = 8.0 * std::numeric_limits<double>::epsilon() * std::abs(v);
  return {std::abs(v.real()) < scale ? 0.0 : v.real(),
          std::abs(v.imag()) < scale ? 0.0 : v.imag()};
}

std::vector<Complex> roots_of(Complex rhs, int m) {
  // Solutions of v^m = rhs, sorted by argument in [0, 2 pi).
  const double modulus = std::pow(std::abs(rhs), 1.0 / m);
  const double base = std::arg(rhs) / m;
  std::vector<Complex> out;
  for (int k = 0; k < m; ++k) {
    out.push_back(snap(std::polar(modulus, base + kTwoPi * k / m)));
  }
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
    return positive_arg(x) < positive_arg(y);
  });
  return out;
}

int nearest_direction(const std::vector<Complex>& directions, Complex z) {
  const double a = std::arg(z);
  int best = 0;
  double best_distance = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < directions.size(); ++j) {
    const double d = angular_distance(a, std::arg(directions[j]));
    if (d < best_distance) {
      best_distance = d;
      best = static_cast<int>(j);
    }
  }
  return best;
}

int petal_containing(std::span<const PacManDomain> petals, Complex z) {
  for (std::size_t j = 0; j < petals.size(); ++j) {
    if (petals[j].contains(z)) return static_cast<int>(j);
  }
  return -1;
}

}  // namespace

Complex ParabolicMap::operator()(Complex z) const {
  return evaluate_polynomial(coefficients_, z);
}

Complex ParabolicMap::derivative(Complex z) const {
  Complex dp = 0.0;
  for (std::size_t i = coefficients_.size(); i-- > 1;) {
    dp = dp * z + coefficients_[i] * static_cast<double>(i);
  }
  return dp;
}

ParabolicMap analyze_parabolic(std::vector<Complex> coefficients) {
  while (!coefficients.empty() && coefficients.back() == Complex(0.0)) {
    coefficients.pop_back();
  }
  constexpr double kTol = 1e-14;
  if (coefficients.size() < 2 || std::abs(coefficients[0]) > kTol ||
      std::abs(coefficients[1] - 1.0) > kTol) {
    throw Error(ErrorKind::NotParabolic,
                "analyze_parabolic: need f(0) = 0 and f'(0) = 1");
  }
  if (coefficients.size() < 3) {
    throw Error(ErrorKind::Linear, "analyze_parabolic: no nonlinear term");
  }
  std::size_t first = 2;
  while (coefficients[first] == Complex(0.0)) ++first;

  ParabolicMap f;
  f.coefficients_ = std::move(coefficients);
  f.m_ = static_cast<int>(first) - 1;
  f.a_ = f.coefficients_[first];
  const double ma = static_cast<double>(f.m_);
  f.vectors_.attraction = roots_of(-1.0 / (ma * f.a_), f.m_);
  f.vectors_.repulsion = roots_of(1.0 / (ma * f.a_), f.m_);
  double sum = 0.0;
  for (const auto& c : f.coefficients_) sum += std::abs(c);
  f.escape_radius_ = 2.0 * (1.0 + sum);
  return f;
}

OrbitRecord forward_orbit(const ParabolicMap& f, Complex z0, std::size_t n) {
  OrbitRecord record;
  record.points.reserve(n + 1);
  record.points.push_back(z0);
  const double escape = f.escape_radius();
  if (std::abs(z0) > escape) {
    record.status = OrbitStatus::Escaped;
    return record;
  }
  Complex z = z0;
  for (std::size_t k = 1; k <= n; ++k) {
    z = f(z);
    record.points.push_back(z);
    if (!(std::abs(z) <= escape)) {
      record.status = OrbitStatus::Escaped;
      return record;
    }
  }
  return record;
}

OrbitRecord classify_direction(const ParabolicMap& f, Complex z0,
                               std::size_t n_max, double tol) {
  const auto petals = membership_petals(f);
  return classify_direction(f, z0, n_max, tol, petals);
}

OrbitRecord classify_direction(const ParabolicMap& f, Complex z0,
                               std::size_t n_max, double tol,
                               std::span<const PacManDomain> petals) {
  if (n_max < 100) {
    throw Error(ErrorKind::InvalidArgument, "classify_direction: n_max < 100");
  }
  const auto& directions = f.attraction();
  OrbitRecord record;
  record.points.reserve(n_max + 1);
  record.points.push_back(z0);
  const double escape = f.escape_radius();
  const std::size_t window_start = n_max - n_max / 10;

  int petal = petal_containing(petals, z0);
  int window_direction = -1;
  bool stable = true;
  Complex z = z0;
  if (!(std::abs(z) <= escape)) {
    record.status = OrbitStatus::Escaped;
    return record;
  }
  for (std::size_t k = 1; k <= n_max; ++k) {
    z = f(z);
    record.points.push_back(z);
    if (!(std::abs(z) <= escape)) {
      record.status = OrbitStatus::Escaped;
      return record;
    }
    if (z == Complex(0.0)) return record;  // lands on the fixed point: trivial
    if (petal < 0) petal = petal_containing(petals, z);
    if (k >= window_start) {
      const int j = nearest_direction(directions, z);
      if (window_direction < 0) {
        window_direction = j;
      } else if (j != window_direction) {
        stable = false;
      }
    }
  }
  if (window_direction < 0) return record;
  const double n = static_cast<double>(n_max);
  const Complex scaled = std::pow(n, 1.0 / f.m()) * z;
  record.direction_error = std::abs(scaled - directions[window_direction]);
  if (stable && petal == window_direction && record.direction_error < tol &&
      std::abs(z) < std::abs(z0)) {
    record.status = OrbitStatus::ConvergedToDirection;
    record.direction = window_direction;
  }
  return record;
}

Membership petal_membership(const ParabolicMap& f, Complex z0,
                            std::size_t n_max,
                            std::span<const PacManDomain> petals) {
  const double escape = f.escape_radius();
  Complex z = z0;
  for (std::size_t k = 0;; ++k) {
    if (!(std::abs(z) <= escape)) return {OrbitStatus::Escaped, -1, k};
    if (z == Complex(0.0)) return {OrbitStatus::Undecided, -1, k};
    if (const int j = petal_containing(petals, z); j >= 0) {
      return {OrbitStatus::ConvergedToDirection, j, k};
    }
    if (k == n_max) return {OrbitStatus::Undecided, -1, k};
    z = f(z);
  }
}

std::vector<Complex> preimages(const ParabolicMap& f, Complex w, double tol) {
  std::vector<Complex> shifted(f.coefficients().begin(), f.coefficients().end());
  shifted[0] -= w;
  RootFinderOptions options;
  options.tol = tol;
  return polynomial_roots(shifted, options);
}

QEnumeration enumerate_q(const ParabolicMap& f, Complex q, int k_max,
                         int l_max, int direction, double tol,
                         const EnumerateOptions& options) {
  if (k_max < 0 || l_max < 0) {
    throw Error(ErrorKind::InvalidArgument, "enumerate_q: negative truncation");
  }
  if (direction < 0 || direction >= f.m()) {
    throw Error(ErrorKind::InvalidArgument, "enumerate_q: bad direction index");
  }
  const std::vector<PacManDomain> petals =
      options.petals.empty() ? membership_petals(f) : options.petals;
  if (options.membership_filter) {
    const OrbitRecord root = classify_direction(f, q, 20000, 0.05, petals);
    if (root.status != OrbitStatus::ConvergedToDirection ||
        root.direction != direction) {
      throw Error(ErrorKind::InvalidArgument,
                  "enumerate_q: q does not converge from direction " +
                      std::to_string(direction));
    }
  }

  QEnumeration result;
  result.root = q;
  result.k_max = k_max;
  result.l_max = l_max;
  result.dedup_quantum = options.dedup_quantum;

  std::vector<Complex> targets{q};
  for (int k = 1; k <= k_max; ++k) targets.push_back(f(targets.back()));

  // Breadth-first expansion; every level is generated in a fixed order.
  std::vector<QPoint> all;
  std::vector<QPoint> frontier;
  for (int k = 0; k <= k_max; ++k) frontier.push_back({targets[k], k, 0, 0.0});
  all = frontier;
  for (int l = 1; l <= l_max && all.size() < options.point_cap; ++l) {
    std::vector<QPoint> next;
    for (const auto& node : frontier) {
      for (const Complex& root : preimages(f, node.value, tol)) {
        next.push_back({root, node.k, l, 0.0});
      }
      if (all.size() + next.size() >= options.point_cap) break;
    }
    if (all.size() + next.size() > options.point_cap) {
      next.resize(options.point_cap - all.size());
    }
    all.insert(all.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  result.generated = all.size();

  for (auto& p : all) {
    Complex z = p.value;
    for (int i = 0; i < p.l; ++i) z = f(z);
    p.residual = std::abs(z - targets[p.k]);
    if (!(p.residual < options.residual_tolerance)) {
      throw Error(ErrorKind::NoConvergence,
                  "enumerate_q: forward residual " + std::to_string(p.residual) +
                      " at (k, l) = (" + std::to_string(p.k) + ", " +
                      std::to_string(p.l) + ")");
    }
  }

  std::sort(all.begin(), all.end(), [](const QPoint& x, const QPoint& y) {
    return std::tuple(x.k, x.l, x.value.real(), x.value.imag()) <
           std::tuple(y.k, y.l, y.value.real(), y.value.imag());
  });

  // Quantized dedup: a point is dropped if an earlier kept point lies within
  // the quantum in both coordinates (neighbouring cells are searched too).
  const double quantum = options.dedup_quantum;
  auto cell_key = [](long long i, long long j) {
    return static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ULL ^
           static_cast<std::uint64_t>(j);
  };
  std::unordered_map<std::uint64_t, std::vector<Complex>> cells;
  for (const auto& p : all) {
    const auto ci = static_cast<long long>(std::floor(p.value.real() / quantum));
    const auto cj = static_cast<long long>(std::floor(p.value.imag() / quantum));
    bool duplicate = false;
    for (long long di = -1; di <= 1 && !duplicate; ++di) {
      for (long long dj = -1; dj <= 1 && !duplicate; ++dj) {
        auto it = cells.find(cell_key(ci + di, cj + dj));
        if (it == cells.end()) continue;
        for (const Complex& kept : it->second) {
          if (std::abs(kept.real() - p.value.real()) <= quantum &&
              std::abs(kept.imag() - p.value.imag()) <= quantum) {
            duplicate = true;
            break;
          }
        }
      }
    }
    if (duplicate) continue;
    cells[cell_key(ci, cj)].push_back(p.value);

    if (options.membership_filter) {
      const Membership mem = petal_membership(f, p.value, options.n_max, petals);
      if (mem.status != OrbitStatus::ConvergedToDirection) {
        ++result.excluded_undecided;
        continue;
      }
      if (mem.direction != direction) {
        ++result.excluded_other_direction;
        continue;
      }
    }
    if (options.immediate_basin_superset &&
        !options.immediate_basin_superset(p.value)) {
      ++result.excluded_outside_region;
      continue;
    }
    result.points.push_back(p);
  }
  return result;
}

Complex project_onto_ray(Complex z, Complex v) {
  const double t = (z * std::conj(v)).real() / std::norm(v);
  return std::max(t, 1e-300) * v;
}

}  // namespace parabasin
