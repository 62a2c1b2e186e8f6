#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_rng.hpp"
#include "vpfp/fit.hpp"
#include "vpfp/spectral.hpp"

using namespace vpfp;

namespace {
constexpr int kN = 48;

std::vector<double> geom_grid(double lo, double hi, int count) {
  std::vector<double> g(count);
  const double r = std::pow(hi / lo, 1.0 / (count - 1));
  double v = lo;
  for (int k = 0; k < count; ++k) {
    g[k] = v;
    v *= r;
  }
  return g;
}
}  // namespace

TEST_CASE("resolvent matrix element at the origin") {
  const HermiteBasis basis(kN);
  // L^{-1} v sqrt(M) = -v sqrt(M), so R11(0,0) = -1; this sign is what the
  // dispersion identity z(s,0) = -(1+s^2) requires.
  CHECK(std::abs(resolvent_R11(0.0, 0.0, basis) - Complex(-1.0)) < 1e-14);

  for (Complex lambda : {Complex(0.3, 0.1), Complex(-0.2, -0.4)}) {
    const Complex expected = -1.0 / (1.0 + lambda);
    CHECK(std::abs(resolvent_R11(lambda, 0.0, basis) - expected) < 1e-13);
  }
}

TEST_CASE("resolvent derivative stays bounded right of -1/2") {
  const HermiteBasis basis(kN);
  // Finite-difference sweep; the contraction argument needs only a uniform
  // bound on the sampled region.
  const double h = 1e-6;
  double worst = 0.0;
  for (double re = -0.5; re <= 0.5; re += 0.25) {
    for (double im = -1.0; im <= 1.0; im += 0.5) {
      for (double sp : {0.0, 0.1, 0.3}) {
        const Complex lambda(re, im);
        const Complex d =
            (resolvent_R11(lambda + h, sp, basis) -
             resolvent_R11(lambda - h, sp, basis)) /
            (2.0 * h);
        worst = std::max(worst, std::abs(d));
      }
    }
  }
  CHECK(worst < 10.0);
  MESSAGE("max |d R11 / d lambda| on the sampled grid: ", worst);
}

TEST_CASE("resolvent flags singular systems") {
  const HermiteBasis basis(kN);
  CHECK_THROWS_AS(resolvent_R11(Complex(-1.0, 0.0), 0.0, basis),
                  std::runtime_error);
}

TEST_CASE("dispersion root at eps = 0 is -(1+s^2)") {
  const HermiteBasis basis(kN);
  CHECK(std::abs(solve_dispersion_z(1.0, 0.0, basis) - Complex(-2.0)) < 1e-13);
  CHECK(std::abs(solve_dispersion_z(0.5, 0.0, basis) - Complex(-1.25)) <
        1e-13);
}

TEST_CASE("dispersion config validation and non-convergence error") {
  const HermiteBasis basis(kN);
  FixedPointConfig bad;
  bad.max_iters = 0;
  CHECK_THROWS_AS(solve_dispersion(1.0, 0.05, bad, basis),
                  std::invalid_argument);
  FixedPointConfig starved;
  starved.max_iters = 1;
  starved.tol = 1e-16;
  starved.use_default_start = false;
  starved.initial_z = Complex(5.0, 5.0);
  CHECK_THROWS_AS(solve_dispersion(1.0, 0.3, starved, basis),
                  std::runtime_error);
}

TEST_CASE("fixed point agrees with the dense eigensolve") {
  const HermiteBasis basis(kN);
  for (auto [s, eps] : {std::pair{1.0, 0.05}, std::pair{0.5, 0.1},
                        std::pair{2.0, 0.05}}) {
    const Complex z = solve_dispersion_z(s, eps, basis);
    const Complex top = direct_spectrum(s, eps, basis).front();
    CHECK(std::abs(eps * eps * z - top) < 1e-8);
  }
}

TEST_CASE("eigenvalue expansion order in eps is two") {
  const HermiteBasis basis(kN);
  const std::vector<double> eps_grid = geom_grid(1e-3, std::pow(10, -1.5), 8);
  for (double s : {0.5, 1.0, 2.0}) {
    std::vector<double> residual;
    for (double eps : eps_grid) {
      const Complex z = solve_dispersion_z(s, eps, basis);
      residual.push_back(std::abs(z + Complex(1.0 + s * s)));
    }
    const double slope = loglog_slope(eps_grid, residual);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.075));
  }
}

TEST_CASE("first eps-derivative of the root vanishes at eps = 0") {
  const HermiteBasis basis(kN);
  for (double s : {0.5, 1.0, 2.0}) {
    const double h = 1e-4;
    const Complex zp = solve_dispersion_z(s, h, basis);
    const Complex z0 = solve_dispersion_z(s, 0.0, basis);
    // Central difference through eps = 0 using z(s, -eps) = conj(z(s, eps))
    // (the symbol conjugates under eps -> -eps).
    const Complex zm = std::conj(zp);
    const double deriv = std::abs(zp - zm) / (2.0 * h);
    const double w = 1.0 + s * s;
    CHECK(deriv <= 1e-6 * w * w);
    CHECK(std::abs(zp - z0) < 1e-6 * w * w);
  }
}

TEST_CASE("leading eigenpair is normalized, accurate and expanded correctly") {
  const HermiteBasis basis(kN);
  const double s = 1.0, eps = 0.05;
  const FluidEigenpair pair = leading_eigenpair(s, eps, basis);

  CHECK(std::abs(bilinear_pair(pair.psi0, pair.psi0, s) - Complex(1.0)) <
        1e-12);
  CHECK(pair.residual <= 1e-9);
  CHECK(pair.lambda0.real() < 0.0);

  // Mode-0 coefficient approaches s/sqrt(1+s^2) with positive real part.
  CHECK(pair.a0.real() > 0.0);
  CHECK(std::abs(pair.a0 - Complex(s / std::sqrt(1.0 + s * s))) <
        0.1 * eps * std::sqrt(1.0 + s * s) + 5e-3);
}

TEST_CASE("eigenfunction microscopic part expands to order two") {
  const HermiteBasis basis(kN);
  const std::vector<double> eps_grid = geom_grid(1e-3, std::pow(10, -1.5), 8);
  for (double s : {0.5, 1.0, 2.0}) {
    std::vector<double> defect;
    for (double eps : eps_grid) {
      const FluidEigenpair pair = leading_eigenpair(s, eps, basis);
      VelocityCoeffs p1 = pair.psi0;
      p1[0] = 0.0;
      p1[1] += Complex(0.0, 1.0) * eps * std::sqrt(1.0 + s * s);
      defect.push_back(p1.norm());
    }
    const double slope = loglog_slope(eps_grid, defect);
    CHECK(slope == doctest::Approx(2.0).epsilon(0.1));
  }
}

TEST_CASE("macroscopic part of the eigenfunction at small eps") {
  const HermiteBasis basis(kN);
  for (double s : {0.5, 1.0, 2.0}) {
    const FluidEigenpair pair = leading_eigenpair(s, 1e-4, basis);
    CHECK(std::abs(pair.a0 * std::sqrt(1.0 + s * s) / s - Complex(1.0)) <
          1e-6);
  }
}

TEST_CASE("direct spectrum of the eps -> 0 symbol is {0,-1,-2,...}") {
  const HermiteBasis basis(kN);
  const std::vector<Complex> eigs = direct_spectrum(1.0, 0.0, basis);
  for (int k = 0; k < kN; ++k) {
    CHECK(std::abs(eigs[k] - Complex(-double(k))) < 1e-12);
  }
}

TEST_CASE("top eigenvalue expands as -eps^2 (1+s^2)") {
  const HermiteBasis basis(kN);
  const double s = 1.0, eps = 0.05;
  const Complex top = direct_spectrum(s, eps, basis).front();
  const double predicted = -eps * eps * (1.0 + s * s);
  CHECK(std::abs(top - Complex(predicted)) <
        5.0 * eps * eps * std::abs(predicted));
}

TEST_CASE("truncation robustness: the root is stable under N doubling") {
  const HermiteBasis coarse(48), fine(96);
  for (auto [s, eps] : {std::pair{1.0, 0.05}, std::pair{0.5, 0.1},
                        std::pair{2.0, 0.05}}) {
    const Complex z48 = solve_dispersion_z(s, eps, coarse);
    const Complex z96 = solve_dispersion_z(s, eps, fine);
    CHECK(std::abs(eps * eps * (z48 - z96)) < 1e-10);
  }
}

TEST_CASE("fluid projection is idempotent and reproduces its eigenvector") {
  const HermiteBasis basis(kN);
  const double s = 1.0, eps = 0.05;
  const FluidEigenpair pair = leading_eigenpair(s, eps, basis);

  const SemigroupSplit at_zero =
      semigroup_split(pair.psi0, s, eps, 0.0, basis);
  CHECK((at_zero.s1 - pair.psi0).norm() < 1e-10);
  CHECK(at_zero.s2.norm() < 1e-9);

  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 8; ++trial) {
    const VelocityCoeffs f = testing::random_unit_coeffs(rng, kN);
    const VelocityCoeffs once = fluid_projection(f, pair, s);
    const VelocityCoeffs twice = fluid_projection(once, pair, s);
    CHECK((twice - once).norm() < 1e-10);
  }
}

TEST_CASE("semigroup remainder decays at a uniform rate in t/eps^2") {
  const HermiteBasis basis(kN);
  const double s = 1.0;
  std::mt19937_64 rng(29);
  const VelocityCoeffs f = testing::random_unit_coeffs(rng, kN);
  std::vector<double> rates;
  for (double eps : {0.1, 0.05}) {
    std::vector<double> tau, norms;
    for (double scaled = 1.0; scaled <= 6.0; scaled += 1.0) {
      const double t = scaled * eps * eps;
      const SemigroupSplit split = semigroup_split(f, s, eps, t, basis);
      tau.push_back(scaled);
      norms.push_back(weighted_norm(split.s2, s));
    }
    const double a_measured = -semilog_slope(tau, norms);
    CHECK(a_measured > 0.1);
    rates.push_back(a_measured);
    MESSAGE("eps = ", eps, ": remainder decay rate a = ", a_measured);
  }
  CHECK(std::abs(rates[0] - rates[1]) <= 0.3 * std::abs(rates[0]));
}

TEST_CASE("remainder gains a factor eps(1+s) on macroscopic data") {
  const HermiteBasis basis(kN);
  const double s = 1.0;
  std::vector<double> t0_norm;
  const std::vector<double> eps_set = {0.1, 0.05, 0.025};
  for (double eps : eps_set) {
    const SemigroupSplit split =
        semigroup_split(basis.unit(0), s, eps, 0.0, basis);
    t0_norm.push_back(weighted_norm(split.s2, s));
  }
  const double slope = loglog_slope(eps_set, t0_norm);
  CHECK(slope == doctest::Approx(1.0).epsilon(0.2));

  // The measured envelope ratio is O(1) across a (t, eps) grid.
  for (double eps : {0.1, 0.05}) {
    std::vector<double> grid;
    for (double scaled : {0.0, 1.0, 2.0, 4.0}) {
      grid.push_back(scaled * eps * eps);
    }
    const MacroRemainderReport report =
        s2_n0_bound_check(basis.unit(0), s, eps, grid, basis, 1.0);
    CHECK(report.max_ratio > 0.0);
    CHECK(report.max_ratio < 10.0);
    MESSAGE("eps = ", eps, ": macro remainder ratio = ", report.max_ratio);
  }

  const MacroRemainderReport zero =
      s2_n0_bound_check(basis.zero(), s, 0.05, {0.0, 0.01}, basis, 1.0);
  CHECK(zero.max_ratio == 0.0);

  CHECK_THROWS_AS(
      s2_n0_bound_check(basis.unit(1), s, 0.05, {0.0}, basis, 1.0),
      std::invalid_argument);
}

TEST_CASE("no fluid branch above the validity threshold") {
  const HermiteBasis basis(kN);
  std::mt19937_64 rng(31);
  const VelocityCoeffs f = testing::random_unit_coeffs(rng, kN);
  // eps(1+s) = 0.8 > 0.5: S1 must be identically zero.
  const SemigroupSplit split = semigroup_split(f, 1.0, 0.4, 0.01, basis);
  CHECK(split.s1.norm() == 0.0);
}
