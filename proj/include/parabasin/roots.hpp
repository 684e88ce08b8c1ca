#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace parabasin {

using Complex = std::complex<double>;

/// Horner evaluation, ascending coefficients.
Complex evaluate_polynomial(std::span<const Complex> coefficients, Complex z);

/// Coefficients of the derivative, ascending.
std::vector<Complex> differentiate(std::span<const Complex> coefficients);

struct RootFinderOptions {
  double tol = 1e-10;          // required |p(root)|
  int max_iterations = 500;    // per attempt
  int max_restarts = 8;        // perturbed restarts on stagnation
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

/// All roots of the polynomial with multiplicity, by Aberth-Ehrlich
/// simultaneous iteration. Clusters of approximations around a multiple root
/// are collapsed onto the root of the matching derivative. Throws
/// Error(NoConvergence) if some residual stays above tol.
std::vector<Complex> polynomial_roots(std::span<const Complex> coefficients,
                                      const RootFinderOptions& options = {});

}  // namespace parabasin
