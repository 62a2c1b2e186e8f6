#pragma once

#include "vpfp/field.hpp"
#include "vpfp/fourier.hpp"

namespace vpfp {

/// One step of the drift-diffusion-Poisson system
///   dn/dt - d2n/dx2 + n = -d/dx (n dPhi/dx),  d2Phi/dx2 = n,
/// with the linear factor e^{-(1+xi^2) dt} exact and the dealiased
/// pseudospectral divergence explicit (two-stage, second order in dt).
DensityField step_ddp(const DensityField& n, double dt, FourierWorkspace& ws);

/// Kinetic embedding n sqrt(M): mode-0 Hermite coefficient equals n_hat.
KineticField lift_to_kinetic(const DensityField& n, const HermiteBasis& basis);

/// Density trace of a kinetic field, the shared initial datum of the
/// limit comparison.
DensityField density_trace(const KineticField& field);

PoissonField poisson_solve(const DensityField& n);

}  // namespace vpfp
