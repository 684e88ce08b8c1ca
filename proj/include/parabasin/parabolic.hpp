#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "parabasin/error.hpp"
#include "parabasin/pacman.hpp"

namespace parabasin {

using Complex = std::complex<double>;

struct AttractionVectorSet {
  std::vector<Complex> attraction;  // m*a*v^m = -1, sorted by arg in [0, 2pi)
  std::vector<Complex> repulsion;   // m*a*v^m = +1, sorted by arg in [0, 2pi)
};

/// Polynomial f(z) = z + a z^{m+1} + (higher terms), stored with ascending
/// coefficients. Only constructible through analyze_parabolic, which enforces
/// f(0) = 0, f'(0) = 1 and a != 0.
class ParabolicMap {
 public:
  std::span<const Complex> coefficients() const { return coefficients_; }
  int m() const { return m_; }
  Complex a() const { return a_; }
  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  const AttractionVectorSet& vectors() const { return vectors_; }
  const std::vector<Complex>& attraction() const { return vectors_.attraction; }

  /// True when some coefficient beyond z^{m+1} is nonzero.
  bool has_higher_terms() const { return degree() > m_ + 1; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

  /// 2 (1 + sum |c_k|): beyond this radius every orbit escapes.
  double escape_radius() const { return escape_radius_; }

 private:
  friend ParabolicMap analyze_parabolic(std::vector<Complex> coefficients);
  ParabolicMap() = default;

  std::vector<Complex> coefficients_;
  int m_ = 0;
  Complex a_;
  AttractionVectorSet vectors_;
  double escape_radius_ = 0.0;
};

/// Extracts m, a and the attraction/repulsion vectors.
/// Throws NotParabolic if f(0) != 0 or f'(0) != 1, Linear if no nonlinear
/// term survives.
ParabolicMap analyze_parabolic(std::vector<Complex> coefficients);

enum class OrbitStatus { ConvergedToDirection, Escaped, Undecided };

struct OrbitRecord {
  std::vector<Complex> points;
  OrbitStatus status = OrbitStatus::Undecided;
  int direction = -1;              // valid when ConvergedToDirection
  double direction_error = 0.0;    // |n^{1/m} z_n - v_j| at the final step
};

/// points[k] = f^k(z0) for k <= n; stops early (status Escaped) once
/// |z_k| exceeds the escape radius.
OrbitRecord forward_orbit(const ParabolicMap& f, Complex z0, std::size_t n);

/// Iterates n_max steps. ConvergedToDirection(j) requires that the orbit
/// entered the petal of direction j, that the nearest attraction direction of
/// n^{1/m} z_n did not change over the last 10% of iterations, and that the
/// final direction error is below tol.
/// The overload without petals uses membership_petals(f).
OrbitRecord classify_direction(const ParabolicMap& f, Complex z0,
                               std::size_t n_max, double tol,
                               std::span<const PacManDomain> petals);
OrbitRecord classify_direction(const ParabolicMap& f, Complex z0,
                               std::size_t n_max, double tol);

struct Membership {
  OrbitStatus status = OrbitStatus::Undecided;
  int direction = -1;
  std::size_t steps = 0;  // iterations until petal entry or escape
};

/// Basin membership by petal absorption: the orbit is followed until it lands
/// in one of the (forward-invariant) petals, escapes, or n_max runs out.
Membership petal_membership(const ParabolicMap& f, Complex z0,
                            std::size_t n_max,
                            std::span<const PacManDomain> petals);

/// All deg(f) roots of f(z) = w, with multiplicity, each with
/// |f(root) - w| < tol. Throws NoConvergence otherwise.
std::vector<Complex> preimages(const ParabolicMap& f, Complex w, double tol);

struct QPoint {
  Complex value;
  int k = 0;
  int l = 0;
  double residual = 0.0;  // |f^l(value) - f^k(q)| by forward iteration
};

struct QEnumeration {
  Complex root;
  std::vector<QPoint> points;
  int k_max = 0;
  int l_max = 0;
  double dedup_quantum = 1e-10;
  std::size_t generated = 0;          // before dedup and filtering
  std::size_t excluded_undecided = 0;
  std::size_t excluded_other_direction = 0;
  std::size_t excluded_outside_region = 0;
};

struct EnumerateOptions {
  bool membership_filter = true;
  std::size_t n_max = 100000;
  std::size_t point_cap = 1000000;
  double dedup_quantum = 1e-10;
  double residual_tolerance = 1e-8;
  /// Known superset of the immediate basin; points outside are not in it and
  /// are excluded (and counted). Empty means no such filter.
  std::function<bool(Complex)> immediate_basin_superset;
  /// Petals used for membership. Empty means membership_petals(f).
  std::vector<PacManDomain> petals;
};

/// Truncation of Q = U_{k<=k_max, l<=l_max} f^{-l}(f^k(q)), optionally
/// restricted to points absorbed by petal `direction`. Output order is
/// (k, l, re, im) and independent of evaluation schedule.
QEnumeration enumerate_q(const ParabolicMap& f, Complex q, int k_max,
                         int l_max, int direction, double tol,
                         const EnumerateOptions& options = {});

/// Nearest point of the ray {t v : t > 0} to z (t clamped at a tiny positive
/// value).
Complex project_onto_ray(Complex z, Complex v);

}  // namespace parabasin
