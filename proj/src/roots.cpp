#include "parabasin/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "parabasin/error.hpp"

namespace parabasin {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::vector<Complex> trimmed(std::span<const Complex> c) {
  std::vector<Complex> out(c.begin(), c.end());
  while (!out.empty() && out.back() == Complex(0.0)) out.pop_back();
  return out;
}

// Value and derivative in one Horner pass.
std::pair<Complex, Complex> eval_with_derivative(std::span<const Complex> c,
                                                 Complex z) {
  Complex p = c.back();
  Complex dp = 0.0;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[i];
  }
  return {p, dp};
}

// Bound on the rounding error of Horner's scheme at z.
double horner_error_bound(std::span<const Complex> c, Complex z) {
  const double az = std::abs(z);
  double acc = std::abs(c.back());
  for (std::size_t i = c.size() - 1; i-- > 0;) acc = acc * az + std::abs(c[i]);
  return 4.0 * static_cast<double>(c.size()) * kEps * acc;
}

std::vector<Complex> initial_guesses(std::span<const Complex> c,
                                     double angle_offset) {
  const std::size_t n = c.size() - 1;
  const Complex center = -c[n - 1] / (static_cast<double>(n) * c[n]);
  // Cauchy-style radius around the centroid of the roots.
  double radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    radius = std::max(radius, std::pow(std::abs(c[i] / c[n]),
                                       1.0 / static_cast<double>(n - i)));
  }
  radius = std::max(radius, 1e-3);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = center + std::polar(radius, angle_offset + 2.0 * std::numbers::pi *
                                                          static_cast<double>(k) /
                                                          static_cast<double>(n));
  }
  return z;
}

bool aberth(std::span<const Complex> c, std::vector<Complex>& z,
            int max_iterations) {
  const std::size_t n = z.size();
  std::vector<bool> done(n, false);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      auto [p, dp] = eval_with_derivative(c, z[i]);
      if (std::abs(p) <= horner_error_bound(c, z[i])) {
        done[i] = true;
        continue;
      }
      all_done = false;
      Complex sum = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const Complex ratio = p / dp;
      Complex step = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        return false;
      }
      z[i] -= step;
      if (std::abs(step) <= 2.0 * kEps * std::abs(z[i])) done[i] = true;
    }
    if (all_done) return true;
  }
  return false;
}

double residual(std::span<const Complex> c, Complex z) {
  return std::abs(eval_with_derivative(c, z).first);
}

// A few Newton steps, kept only while the residual improves.
Complex polish(std::span<const Complex> c, Complex z) {
  double best = residual(c, z);
  for (int i = 0; i < 4 && best > 0.0; ++i) {
    auto [p, dp] = eval_with_derivative(c, z);
    if (dp == Complex(0.0)) break;
    const Complex candidate = z - p / dp;
    const double r = residual(c, candidate);
    if (!(r < best)) break;
    z = candidate;
    best = r;
  }
  return z;
}

// Collapses approximations scattered around a multiple root onto the simple
// root of the (k-1)-th derivative. A merge is kept only if the collapsed root
// still meets the residual tolerance.
void collapse_clusters(std::span<const Complex> c, std::vector<Complex>& z,
                       double tol) {
  const std::size_t n = z.size();
  const double radius = 10.0 * std::sqrt(tol);
  std::vector<int> cluster(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (cluster[i] >= 0) continue;
    cluster[i] = next;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (cluster[j] < 0 &&
          std::abs(z[i] - z[j]) < radius * std::max(1.0, std::abs(z[i]))) {
        cluster[j] = next;
      }
    }
    ++next;
  }
  for (int id = 0; id < next; ++id) {
    std::vector<std::size_t> members;
    Complex centroid = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (cluster[i] == id) {
        members.push_back(i);
        centroid += z[i];
      }
    }
    if (members.size() < 2) continue;
    centroid /= static_cast<double>(members.size());
    std::vector<Complex> d(c.begin(), c.end());
    for (std::size_t k = 1; k < members.size(); ++k) d = differentiate(d);
    Complex root = centroid;
    for (int it = 0; it < 50; ++it) {
      auto [p, dp] = eval_with_derivative(d, root);
      if (dp == Complex(0.0)) break;
      const Complex step = p / dp;
      root -= step;
      if (std::abs(step) <= 2.0 * kEps * std::max(1.0, std::abs(root))) break;
    }
    if (std::abs(root - centroid) < radius * std::max(1.0, std::abs(centroid)) &&
        residual(c, root) < tol) {
      for (std::size_t i : members) z[i] = root;
    }
  }
}

}  // namespace

Complex evaluate_polynomial(std::span<const Complex> coefficients, Complex z) {
  Complex p = 0.0;
  for (std::size_t i = coefficients.size(); i-- > 0;) p = p * z + coefficients[i];
  return p;
}

std::vector<Complex> differentiate(std::span<const Complex> coefficients) {
  std::vector<Complex> d;
  for (std::size_t i = 1; i < coefficients.size(); ++i) {
    d.push_back(coefficients[i] * static_cast<double>(i));
  }
  return d;
}

std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients,
                                      const RootFinderOptions& options) {
  const std::vector<Complex> c = trimmed(coefficients);
  if (c.size() < 2) {
    throw Error(ErrorKind::InvalidArgument, "polynomial_roots: constant polynomial");
  }
  const std::size_t n = c.size() - 1;
  if (n == 1) {
    const Complex root = -c[0] / c[1];
    if (!(residual(c, root) < options.tol)) {
      throw Error(ErrorKind::NoConvergence, "polynomial_roots: linear residual");
    }
    return {root};
  }

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Complex> z = initial_guesses(c, 0.4);
  double worst = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt <= options.max_restarts; ++attempt) {
    if (attempt > 0) {
      // Perturbed restart from the last iterate: random angle and jitter.
      std::vector<Complex> fresh = initial_guesses(c, 2.0 * std::numbers::pi * unit(rng));
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(z[i].real()) || !std::isfinite(z[i].imag())) z[i] = fresh[i];
        z[i] += 1e-3 * std::max(1.0, std::abs(z[i])) *
                Complex(unit(rng) - 0.5, unit(rng) - 0.5);
      }
    }
    aberth(c, z, options.max_iterations);
    for (auto& root : z) root = polish(c, root);
    collapse_clusters(c, z, options.tol);
    worst = 0.0;
    for (const auto& root : z) worst = std::max(worst, residual(c, root));
    if (worst < options.tol) return z;
  }
  throw Error(ErrorKind::NoConvergence,
              "polynomial_roots: residual " + std::to_string(worst) +
                  " above tolerance " + std::to_string(options.tol));
}

}  // namespace parabasin
