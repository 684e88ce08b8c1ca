#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "parabasin/pacman.hpp"
#include "parabasin/parabolic.hpp"

namespace parabasin {

/// Value of the Fatou chart omega = -1/(m a z^m). `sheet` selects which m-th
/// root the inverse chart returns: z = root_0(omega) * e^{2 pi i sheet / m},
/// root_0 being the principal branch of (-1/(m a omega))^{1/m}.
struct FatouChartValue {
  Complex omega;
  int sheet = 0;
};

FatouChartValue fatou_chart(const ParabolicMap& f, Complex z);
Complex fatou_chart_inverse(const ParabolicMap& f, const FatouChartValue& value);

/// F(omega) = phi(f(phi^{-1}(omega))) on the given sheet; F(omega) = omega + 1
/// + o(1) as |omega| grows.
Complex conjugated_map(const ParabolicMap& f, Complex omega, int sheet);

/// F(omega) - omega, evaluated without cancellation (accurate even where
/// omega itself dwarfs the displacement).
Complex conjugated_displacement(const ParabolicMap& f, Complex omega, int sheet);

/// Sheet whose inverse chart lands in the attracting sector of direction j.
int sheet_of_direction(const ParabolicMap& f, int direction);

/// Twice the sampled sup of |F(omega) - omega - 1| over |omega| >= rho, all
/// arguments and all sheets, on a log-radial grid covering [rho, 1e4 rho].
double estimate_remainder(const ParabolicMap& f, double rho,
                          std::size_t samples);

/// Two-stage tangent-line construction in the Fatou plane. Radii ordering is
/// R0_prime < R0 < r0; the omega-plane radii are 1/(m|a| R^m).
struct PacManConstruction {
  double theta0 = 0.0;        // gap half-angle in the z-plane
  double omega_gap = 0.0;     // m * theta0, gap in the Fatou plane
  double r0 = 0.0;            // remainder-control radius
  double R0 = 0.0;            // = r, first tangent radius
  double R0_prime = 0.0;      // second tangent radius
  double rho0 = 0.0;          // omega-plane radii matching r0, R0, R0_prime
  double rho1 = 0.0;
  double rho2 = 0.0;
  Complex A0, B0;             // tangent line L0 meets l1^omega and the real axis
  Complex A, B;               // same for the second line L
  double remainder_bound = 0.0;
};

/// Throws DegenerateAngle unless 0 < theta0 < pi/6, ConstructionFailed if no
/// radius brings the sampled remainder below m theta0 / 3.
PacManConstruction construct_pacman(const ParabolicMap& f, double theta0,
                                    std::size_t samples = 4096);

/// One Pac-Man per attraction direction at the given z-plane radius.
std::vector<PacManDomain> pacman_petals(const ParabolicMap& f,
                                        const PacManConstruction& construction,
                                        double radius);

/// Certified petals used for basin membership: D_{R0'} of a construction at
/// a wide gap angle (0.5 rad). Cached per polynomial.
std::vector<PacManDomain> membership_petals(const ParabolicMap& f);

struct InvarianceReport {
  std::size_t violations = 0;   // sample orbits that left the target
  double worst_margin = 0.0;    // min relative margin seen (negative = exit)
  std::size_t samples = 0;
  std::size_t steps = 0;
};

/// Iterates quasi-random points of `start` (90% Halton interior points, 10%
/// points 1e-6 inside the boundary, relative) and counts orbits leaving
/// `target` within n_steps.
InvarianceReport check_invariance(const ParabolicMap& f,
                                  const PacManDomain& start,
                                  const PacManDomain& target,
                                  std::size_t n_steps, std::size_t samples);

/// check_invariance from D_{R0'} into D_{R0} for petal `direction`.
InvarianceReport check_petal_invariance(const ParabolicMap& f,
                                        const PacManConstruction& construction,
                                        std::size_t n_steps,
                                        std::size_t samples,
                                        int direction = 0);

}  // namespace parabasin
