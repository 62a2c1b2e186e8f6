#pragma once

#include <vector>

#include "vpfp/hermite.hpp"

namespace vpfp {

/// Distribution perturbation on a periodic box: one VelocityCoeffs per
/// spatial Fourier mode xi_j = 2*pi*j/box_length, j in [-j_max, j_max].
class KineticField {
 public:
  KineticField(const HermiteBasis& basis, int j_max, double box_length);

  const HermiteBasis& basis() const { return basis_; }
  int j_max() const { return j_max_; }
  double box_length() const { return box_length_; }
  int n_fourier() const { return 2 * j_max_ + 1; }

  double wavenumber(int j) const;

  VelocityCoeffs& mode(int j) { return modes_[j + j_max_]; }
  const VelocityCoeffs& mode(int j) const { return modes_[j + j_max_]; }

  /// Density trace n_hat(j) = f_hat(j)[0].
  Complex density(int j) const { return mode(j)[0]; }

  /// Max deviation from the Hermitian symmetry f(-j) = conj(f(j)).
  double hermitian_symmetry_error() const;

  double squared_l2() const;

 private:
  HermiteBasis basis_;
  int j_max_;
  double box_length_;
  std::vector<VelocityCoeffs> modes_;
};

/// Mean-zero density perturbation on the same Fourier grid.
class DensityField {
 public:
  DensityField(int j_max, double box_length);

  int j_max() const { return j_max_; }
  double box_length() const { return box_length_; }
  int n_fourier() const { return 2 * j_max_ + 1; }
  double wavenumber(int j) const;

  Complex& mode(int j) { return n_hat_[j + j_max_]; }
  Complex mode(int j) const { return n_hat_[j + j_max_]; }

  double hermitian_symmetry_error() const;
  double squared_l2() const;

 private:
  int j_max_;
  double box_length_;
  Eigen::VectorXcd n_hat_;
};

/// Electric-field gradient per Fourier mode; identically zero at j = 0.
struct PoissonField {
  Eigen::VectorXcd grad_phi_hat;  // index j + j_max
  int j_max = 0;

  Complex mode(int j) const { return grad_phi_hat[j + j_max]; }
};

/// grad Phi from a density spectrum: -i*xi*n_hat/|xi|^2, zero at j = 0.
PoissonField poisson_gradient(const Eigen::VectorXcd& n_hat, int j_max,
                              double box_length);

/// Discrete H^k_P norm: nonzero modes carry (1+s^2)^k (||f||^2 +
/// |f[0]|^2/s^2); the zero mode carries the plain norm and its macroscopic
/// part must vanish (the Poisson weight is undefined there).
double hkp_norm(const KineticField& field, int k);

/// H^k norm of the field gradient, sqrt(sum (1+s^2)^k |grad_phi|^2).
double grad_phi_hk_norm(const PoissonField& phi, double box_length, int k);

KineticField field_difference(const KineticField& a, const KineticField& b);

}  // namespace vpfp
