#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

// Shared generators for the property suites. Fixed seeds keep runs reproducible.
namespace testing {

using Complex = std::complex<double>;

inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

inline int uniform_int(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng());
}

inline Complex random_polar(double r_lo, double r_hi, double arg_lo, double arg_hi) {
  return std::polar(std::exp(uniform(std::log(r_lo), std::log(r_hi))),
                    uniform(arg_lo, arg_hi));
}

inline Complex random_disk(double r) {
  return std::polar(r * std::sqrt(uniform(0.0, 1.0)), uniform(-std::numbers::pi, std::numbers::pi));
}

}  // namespace testing
