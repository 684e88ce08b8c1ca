#include "parabasin/pacman.hpp"

#include <algorithm>
#include <cmath>

namespace parabasin {

namespace {

// Rounding noise in the rotation is zeroed so that mirror-symmetric domains
// give mirror-symmetric answers.
double offset_from_bisector(const PacManDomain& d, Complex z) {
  Complex rotation = std::polar(1.0, -d.bisector_arg);
  if (std::abs(rotation.real()) < 1e-15) rotation.real(0.0);
  if (std::abs(rotation.imag()) < 1e-15) rotation.imag(0.0);
  return std::arg(z * rotation);
}

}  // namespace

bool PacManDomain::contains(Complex z) const {
  const double r = std::abs(z);
  if (!(r > 0.0) || r > radius) return false;
  return std::abs(offset_from_bisector(*this, z)) < half_aperture();
}

double PacManDomain::relative_margin(Complex z) const {
  const double r = std::abs(z);
  if (!(r > 0.0)) return -1.0;
  const double radial = 1.0 - r / radius;
  const double angular =
      (half_aperture() - std::abs(offset_from_bisector(*this, z))) /
      half_aperture();
  return std::min(radial, angular);
}

PacManDomain left_pacman(double radius, double gap_half_angle) {
  return {Orientation::Left, radius, gap_half_angle, 2.0 * std::numbers::pi,
          std::numbers::pi};
}

PacManDomain right_pacman(double radius, double gap_half_angle) {
  return {Orientation::Right, radius, gap_half_angle, 2.0 * std::numbers::pi,
          0.0};
}

}  // namespace parabasin
