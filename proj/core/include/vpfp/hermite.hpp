#pragma once

#include <Eigen/Dense>
#include <complex>

namespace vpfp {

using Complex = std::complex<double>;
using VelocityCoeffs = Eigen::VectorXcd;

/// Truncated Gaussian-weighted Hermite chain in one velocity dimension.
///
/// The basis functions are phi_n(v) = h_n(v) sqrt(M(v)), where M is the
/// standard Maxwellian and the h_n are the orthonormal probabilists'
/// Hermite polynomials.  phi_0 = sqrt(M) carries the macroscopic density
/// trace, and the linearized Fokker-Planck operator is exactly diagonal
/// with eigenvalue -n on mode n.
class HermiteBasis {
 public:
  explicit HermiteBasis(int n_modes);

  int n_modes() const { return n_modes_; }

  VelocityCoeffs zero() const { return VelocityCoeffs::Zero(n_modes_); }
  VelocityCoeffs unit(int n) const;

 private:
  int n_modes_;
};

/// Diagonal action of the Fokker-Planck operator: (Lf)_n = -n f_n.
VelocityCoeffs apply_L(const VelocityCoeffs& f);

/// Tridiagonal ladder action of multiplication by v:
/// (vf)_n = sqrt(n) f_{n-1} + sqrt(n+1) f_{n+1}; the coefficient produced
/// beyond the top mode is dropped.
VelocityCoeffs apply_v(const VelocityCoeffs& f);

/// Bidiagonal ladder action of d/dv:
/// (df)_n = (1/2)(sqrt(n+1) f_{n+1} - sqrt(n) f_{n-1}), overflow dropped.
VelocityCoeffs apply_dv(const VelocityCoeffs& f);

/// Macroscopic projection P0 f = (f, sqrt(M)) sqrt(M): keeps mode 0 only.
VelocityCoeffs project_P0(const VelocityCoeffs& f);

/// Microscopic projection P1 = I - P0: zeroes mode 0.
VelocityCoeffs project_P1(const VelocityCoeffs& f);

/// Dissipation norm squared ||df/dv||^2 + ||vf||^2, evaluated on a basis
/// extended by one mode so the top coefficient is not truncated away.
double sigma_norm_sq(const VelocityCoeffs& f);

/// Dense matrix of apply_v on an n x n chain (symmetric tridiagonal).
Eigen::MatrixXd ladder_v_matrix(int n);

/// Dense matrix of apply_dv on an n x n chain.
Eigen::MatrixXd ladder_dv_matrix(int n);

}  // namespace vpfp
