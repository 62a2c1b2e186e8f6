#pragma once

#include <cstdint>
#include <random>

#include "vpfp/hermite.hpp"

namespace vpfp::testing {

// Platform-independent uniform in [-1, 1); std distributions are
// implementation-defined, so map the raw 64-bit draws directly.
inline double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
}

inline VelocityCoeffs random_coeffs(std::mt19937_64& rng, int n) {
  VelocityCoeffs f(n);
  for (int k = 0; k < n; ++k) {
    f[k] = Complex(uniform_pm1(rng), uniform_pm1(rng));
  }
  return f;
}

inline VelocityCoeffs random_unit_coeffs(std::mt19937_64& rng, int n) {
  VelocityCoeffs f = random_coeffs(rng, n);
  return f / f.norm();
}

inline VelocityCoeffs random_real_coeffs(std::mt19937_64& rng, int n) {
  VelocityCoeffs f(n);
  for (int k = 0; k < n; ++k) f[k] = Complex(uniform_pm1(rng), 0.0);
  return f;
}

}  // namespace vpfp::testing
