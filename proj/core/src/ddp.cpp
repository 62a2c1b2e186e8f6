#include "vpfp/ddp.hpp"

#include <cmath>
#include <stdexcept>

namespace vpfp {

namespace {

constexpr Complex kImag{0.0, 1.0};

Eigen::VectorXcd spectrum_of(const DensityField& n) {
  Eigen::VectorXcd v(n.n_fourier());
  for (int j = -n.j_max(); j <= n.j_max(); ++j) v[j + n.j_max()] = n.mode(j);
  return v;
}

// -d/dx (n dPhi/dx) in spectral form.
Eigen::VectorXcd nonlinear_rhs(const DensityField& n, FourierWorkspace& ws) {
  const Eigen::VectorXcd n_hat = spectrum_of(n);
  const PoissonField phi = poisson_gradient(n_hat, n.j_max(), n.box_length());
  const Eigen::VectorXcd flux = ws.product(n_hat, phi.grad_phi_hat);
  Eigen::VectorXcd rhs(n.n_fourier());
  for (int j = -n.j_max(); j <= n.j_max(); ++j) {
    rhs[j + n.j_max()] = -kImag * n.wavenumber(j) * flux[j + n.j_max()];
  }
  return rhs;
}

}  // namespace

DensityField step_ddp(const DensityField& n, double dt, FourierWorkspace& ws) {
  if (dt <= 0.0) throw std::invalid_argument("step_ddp: dt must be > 0");
  if (ws.j_max() != n.j_max()) {
    throw std::invalid_argument("step_ddp: workspace grid mismatch");
  }
  const int jm = n.j_max();
  Eigen::VectorXcd decay(n.n_fourier());
  for (int j = -jm; j <= jm; ++j) {
    const double xi = n.wavenumber(j);
    decay[j + jm] = std::exp(-(1.0 + xi * xi) * dt);
  }

  const Eigen::VectorXcd k1 = nonlinear_rhs(n, ws);

  DensityField pred(jm, n.box_length());
  for (int j = -jm; j <= jm; ++j) {
    pred.mode(j) = decay[j + jm] * (n.mode(j) + dt * k1[j + jm]);
  }

  const Eigen::VectorXcd k2 = nonlinear_rhs(pred, ws);

  DensityField next(jm, n.box_length());
  for (int j = -jm; j <= jm; ++j) {
    next.mode(j) = decay[j + jm] * (n.mode(j) + 0.5 * dt * k1[j + jm]) +
                   0.5 * dt * k2[j + jm];
  }
  if (!std::isfinite(next.squared_l2())) {
    throw std::runtime_error("step_ddp: NaN detected");
  }
  return next;
}

KineticField lift_to_kinetic(const DensityField& n, const HermiteBasis& basis) {
  KineticField f(basis, n.j_max(), n.box_length());
  for (int j = -n.j_max(); j <= n.j_max(); ++j) f.mode(j)[0] = n.mode(j);
  return f;
}

DensityField density_trace(const KineticField& field) {
  DensityField n(field.j_max(), field.box_length());
  for (int j = -field.j_max(); j <= field.j_max(); ++j) {
    n.mode(j) = field.density(j);
  }
  return n;
}

PoissonField poisson_solve(const DensityField& n) {
  return poisson_gradient(spectrum_of(n), n.j_max(), n.box_length());
}

}  // namespace vpfp
