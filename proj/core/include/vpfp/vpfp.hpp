#pragma once

#include <cstdint>
#include <vector>

#include "vpfp/field.hpp"
#include "vpfp/fourier.hpp"

namespace vpfp {

enum class Prepared { Well, Ill };

/// Self-consistent field from the density trace; requires zero-mode
/// neutrality |f_hat(0)[0]| <= 1e-12.
PoissonField poisson_solve(const KineticField& field);

/// Quadratic coupling G(f) = (1/2)(v dPhi/dx) f - (dPhi/dx) df/dv, computed
/// pseudospectrally with 2/3-rule dealiasing; the velocity structure enters
/// through the v and d/dv ladders.
KineticField nonlinear_G(const KineticField& field, const PoissonField& phi,
                         FourierWorkspace& ws);

/// Largest admissible explicit step for the (1/eps) v d/dx transport:
/// eps / (2 * s_max * sqrt(N)).
double transport_stability_bound(const KineticField& field, double eps);

/// Default step policy min(eps^2/4, eps/(4 s_max sqrt(N)), cap).
double default_dt(const KineticField& field, double eps, double cap = 1e-3);

/// One step of the two-stage exponential (Lawson) scheme: the stiff
/// diagonal (1/eps^2) L is an exact integrating factor e^{-n dt/eps^2};
/// transport, Poisson coupling and G are explicit, second order in dt.
KineticField step(const KineticField& field, double dt, double eps,
                  FourierWorkspace& ws);

struct EnergyReport {
  double energy = 0.0;       // ||f||^2_{H^k(L^2_v)} + ||grad Phi||^2_{H^k}
  double dissipation = 0.0;  // eps^{-2}||P1 f||^2_{H^k(L^2_sigma)} + macro terms
};

EnergyReport energy_monitor(const KineticField& field, double eps, int k = 2);

/// Hermite-weighted sum over modes of n |f_hat(xi, n)|^2, the discrete
/// stand-in for the velocity-weighted regularity norm.
double hermite_weighted_sum(const KineticField& field);

/// Initial data: density n0(x) = delta0 cos(2 pi x / L) lifted to n0 sqrt(M);
/// the ill-prepared family adds the microscopic slice delta0 cos(...) phi_2.
/// micro_noise > 0 adds a seeded Hermitian-symmetric microscopic
/// perturbation of that relative amplitude.
KineticField make_initial_field(const HermiteBasis& basis, int j_max,
                                double box_length, double delta0,
                                Prepared prepared, std::uint64_t seed = 0,
                                double micro_noise = 0.0);

}  // namespace vpfp
