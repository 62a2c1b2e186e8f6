#include "vpfp/hermite.hpp"

#include <cmath>
#include <stdexcept>

namespace vpfp {

HermiteBasis::HermiteBasis(int n_modes) : n_modes_(n_modes) {
  if (n_modes < 8) {
    throw std::invalid_argument(
        "HermiteBasis: n_modes must be >= 8 to resolve the resolvent chain");
  }
}

VelocityCoeffs HermiteBasis::unit(int n) const {
  if (n < 0 || n >= n_modes_) {
    throw std::out_of_range("HermiteBasis::unit: mode index out of range");
  }
  VelocityCoeffs e = zero();
  e[n] = 1.0;
  return e;
}

VelocityCoeffs apply_L(const VelocityCoeffs& f) {
  VelocityCoeffs out(f.size());
  for (Eigen::Index n = 0; n < f.size(); ++n) {
    out[n] = -static_cast<double>(n) * f[n];
  }
  return out;
}

namespace {

// Shared ladder kernels writing into a vector of chosen length; out_size
// one larger than f keeps the overflow coefficient instead of dropping it.
VelocityCoeffs ladder_v(const VelocityCoeffs& f, Eigen::Index out_size) {
  VelocityCoeffs out = VelocityCoeffs::Zero(out_size);
  const Eigen::Index n_in = f.size();
  for (Eigen::Index n = 0; n < out_size; ++n) {
    Complex acc = 0.0;
    if (n - 1 >= 0 && n - 1 < n_in) acc += std::sqrt(double(n)) * f[n - 1];
    if (n + 1 < n_in) acc += std::sqrt(double(n + 1)) * f[n + 1];
    out[n] = acc;
  }
  return out;
}

VelocityCoeffs ladder_dv(const VelocityCoeffs& f, Eigen::Index out_size) {
  VelocityCoeffs out = VelocityCoeffs::Zero(out_size);
  const Eigen::Index n_in = f.size();
  for (Eigen::Index n = 0; n < out_size; ++n) {
    Complex acc = 0.0;
    if (n + 1 < n_in) acc += 0.5 * std::sqrt(double(n + 1)) * f[n + 1];
    if (n - 1 >= 0 && n - 1 < n_in) acc -= 0.5 * std::sqrt(double(n)) * f[n - 1];
    out[n] = acc;
  }
  return out;
}

}  // namespace

VelocityCoeffs apply_v(const VelocityCoeffs& f) { return ladder_v(f, f.size()); }

VelocityCoeffs apply_dv(const VelocityCoeffs& f) { return ladder_dv(f, f.size()); }

VelocityCoeffs project_P0(const VelocityCoeffs& f) {
  VelocityCoeffs out = VelocityCoeffs::Zero(f.size());
  if (f.size() > 0) out[0] = f[0];
  return out;
}

VelocityCoeffs project_P1(const VelocityCoeffs& f) {
  VelocityCoeffs out = f;
  if (out.size() > 0) out[0] = 0.0;
  return out;
}

double sigma_norm_sq(const VelocityCoeffs& f) {
  const Eigen::Index ext = f.size() + 1;
  return ladder_dv(f, ext).squaredNorm() + ladder_v(f, ext).squaredNorm();
}

Eigen::MatrixXd ladder_v_matrix(int n) {
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double c = std::sqrt(double(k + 1));
    v(k, k + 1) = c;
    v(k + 1, k) = c;
  }
  return v;
}

Eigen::MatrixXd ladder_dv_matrix(int n) {
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k + 1 < n; ++k) {
    const double c = 0.5 * std::sqrt(double(k + 1));
    d(k, k + 1) = c;
    d(k + 1, k) = -c;
  }
  return d;
}

}  // namespace vpfp
