#pragma once

#include <complex>
#include <numbers>

namespace parabasin {

using Complex = std::complex<double>;

enum class Orientation { Left, Right };

// Truncated sector around the ray at `bisector_arg`, with an angular gap of
// `gap_half_angle` cut out on both sides of the opposite boundary:
//   {z : 0 < |z| <= radius, |arg(z e^{-i bisector})| < opening/2 - gap}.
// With opening 2*pi and bisector pi this is exactly the Left Pac-Man
// {re^{it} : 0 < r <= R, gap < t < 2 pi - gap}; bisector 0 gives the Right one.
struct PacManDomain {
  Orientation orientation = Orientation::Left;
  double radius = 0.0;
  double gap_half_angle = 0.0;
  double sector_opening = 2.0 * std::numbers::pi;
  double bisector_arg = std::numbers::pi;

  /// Largest |angle offset from the bisector| still inside the domain.
  double half_aperture() const { return 0.5 * sector_opening - gap_half_angle; }

  bool contains(Complex z) const;

  /// Scale-free signed margin: min(1 - |z|/radius, angular slack / half
  /// aperture). Positive inside, negative outside.
  double relative_margin(Complex z) const;
};

PacManDomain left_pacman(double radius, double gap_half_angle);
PacManDomain right_pacman(double radius, double gap_half_angle);

}  // namespace parabasin
