#pragma once

#include <vector>

#include "vpfp/symbol.hpp"

namespace vpfp {

/// Validity threshold on eps*(1+s) below which the fluid branch exists.
inline constexpr double kDefaultFluidThreshold = 0.5;

struct FixedPointConfig {
  int max_iters = 200;
  double tol = 1e-13;
  // Default start is the eps = 0 eigenvalue -(1+s^2); callers may override.
  Complex initial_z{0.0, 0.0};
  bool use_default_start = true;
};

/// Leading eigenpair of the truncated symbol B_eps(s).
struct FluidEigenpair {
  Complex lambda0;       ///< eigenvalue, equals eps^2 * z(s, eps)
  VelocityCoeffs psi0;   ///< eigenvector, bilinear-normalized
  Complex a0;            ///< mode-0 coefficient of psi0
  double residual = 0.0; ///< ||B psi0 - lambda0 psi0||_s
};

struct DispersionResult {
  Complex z;
  int iterations = 0;
  double last_delta = 0.0;
};

/// Mode-1 matrix element of the microscopic resolvent:
/// R11(lambda, s') = <(L - lambda - i s' P1 v P1)^{-1} phi_1, phi_1>
/// restricted to modes 1..N-1.  R11(0, 0) = -1 and R11(lambda, 0) =
/// -1/(1+lambda); these signs are what make the dispersion fixed point
/// land on z(s, 0) = -(1+s^2).
Complex resolvent_R11(Complex lambda, double s_prime, const HermiteBasis& basis);

/// Picard iteration z <- (1+s^2) R11(eps^2 z, eps s) for the root of the
/// dispersion function; throws on non-convergence (outside the contraction
/// regime) or a singular resolvent.
DispersionResult solve_dispersion(double s, double eps,
                                  const FixedPointConfig& cfg,
                                  const HermiteBasis& basis);

Complex solve_dispersion_z(double s, double eps, const HermiteBasis& basis);

/// Constructs and bilinear-normalizes the fluid eigenpair from the
/// dispersion root.  The small-s stabilized grouping a0*(1+s^2)/s is used
/// for the microscopic coefficient.
FluidEigenpair leading_eigenpair(double s, double eps, const HermiteBasis& basis);

/// Full spectrum of the truncated symbol, sorted by real part descending.
std::vector<Complex> direct_spectrum(double s, double eps,
                                     const HermiteBasis& basis);
std::vector<Complex> direct_spectrum(const SymbolMatrix& sym);

struct SemigroupSplit {
  VelocityCoeffs s1;
  VelocityCoeffs s2;
};

/// Splits e^{(t/eps^2) B} f into the rank-one fluid part
/// S1 f = e^{(t/eps^2) lambda0} <f, psi0>_bilinear psi0 (zero above the
/// fluid threshold) and the remainder S2 f = full - S1 f.
SemigroupSplit semigroup_split(const VelocityCoeffs& f, double s, double eps,
                               double t, const HermiteBasis& basis,
                               double fluid_threshold = kDefaultFluidThreshold);

/// Rank-one fluid projection alone (the t = 0 value of S1).
VelocityCoeffs fluid_projection(const VelocityCoeffs& f,
                                const FluidEigenpair& pair, double s);

struct MacroRemainderReport {
  double a_used = 0.0;       ///< decay exponent used for the envelope
  double max_ratio = 0.0;    ///< max of ||S2 f0||_s / (eps (1+s) e^{-a t/eps^2} ||f0||_s)
  std::vector<double> ratios;
};

/// Measures the extra eps*(1+s) gain of the remainder on macroscopic data
/// f0 in N0 over a t-grid; the reported ratio should stay O(1).
MacroRemainderReport s2_n0_bound_check(const VelocityCoeffs& f0_in_N0, double s,
                                       double eps,
                                       const std::vector<double>& t_grid,
                                       const HermiteBasis& basis,
                                       double a_measured);

}  // namespace vpfp
