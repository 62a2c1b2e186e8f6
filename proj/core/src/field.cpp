#include "vpfp/field.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vpfp {

namespace {
constexpr double kNeutralityTol = 1e-12;
}

KineticField::KineticField(const HermiteBasis& basis, int j_max,
                           double box_length)
    : basis_(basis), j_max_(j_max), box_length_(box_length) {
  if (j_max < 1) throw std::invalid_argument("KineticField: j_max must be >= 1");
  if (box_length <= 0.0) {
    throw std::invalid_argument("KineticField: box_length must be > 0");
  }
  modes_.assign(n_fourier(), basis_.zero());
}

double KineticField::wavenumber(int j) const {
  return 2.0 * std::numbers::pi * j / box_length_;
}

double KineticField::hermitian_symmetry_error() const {
  double worst = 0.0;
  for (int j = 0; j <= j_max_; ++j) {
    const VelocityCoeffs diff = mode(-j) - mode(j).conjugate();
    worst = std::max(worst, diff.cwiseAbs().maxCoeff());
  }
  return worst;
}

double KineticField::squared_l2() const {
  double acc = 0.0;
  for (const auto& m : modes_) acc += m.squaredNorm();
  return acc;
}

DensityField::DensityField(int j_max, double box_length)
    : j_max_(j_max), box_length_(box_length) {
  if (j_max < 1) throw std::invalid_argument("DensityField: j_max must be >= 1");
  if (box_length <= 0.0) {
    throw std::invalid_argument("DensityField: box_length must be > 0");
  }
  n_hat_ = Eigen::VectorXcd::Zero(n_fourier());
}

double DensityField::wavenumber(int j) const {
  return 2.0 * std::numbers::pi * j / box_length_;
}

double DensityField::hermitian_symmetry_error() const {
  double worst = 0.0;
  for (int j = 0; j <= j_max_; ++j) {
    worst = std::max(worst, std::abs(mode(-j) - std::conj(mode(j))));
  }
  return worst;
}

double DensityField::squared_l2() const { return n_hat_.squaredNorm(); }

PoissonField poisson_gradient(const Eigen::VectorXcd& n_hat, int j_max,
                              double box_length) {
  PoissonField phi;
  phi.j_max = j_max;
  phi.grad_phi_hat = Eigen::VectorXcd::Zero(2 * j_max + 1);
  for (int j = -j_max; j <= j_max; ++j) {
    if (j == 0) continue;
    const double xi = 2.0 * std::numbers::pi * j / box_length;
    phi.grad_phi_hat[j + j_max] =
        Complex(0.0, -1.0) * xi * n_hat[j + j_max] / (xi * xi);
  }
  return phi;
}

double hkp_norm(const KineticField& field, int k) {
  if (std::abs(field.density(0)) > kNeutralityTol) {
    throw std::runtime_error(
        "hkp_norm: nonzero mean density; Poisson weight undefined");
  }
  double acc = field.mode(0).squaredNorm();
  for (int j = -field.j_max(); j <= field.j_max(); ++j) {
    if (j == 0) continue;
    const double s2 = std::pow(field.wavenumber(j), 2);
    const double weight = std::pow(1.0 + s2, k);
    acc += weight * (field.mode(j).squaredNorm() +
                     std::norm(field.density(j)) / s2);
  }
  return std::sqrt(acc);
}

double grad_phi_hk_norm(const PoissonField& phi, double box_length, int k) {
  double acc = 0.0;
  for (int j = -phi.j_max; j <= phi.j_max; ++j) {
    if (j == 0) continue;
    const double xi = 2.0 * std::numbers::pi * j / box_length;
    acc += std::pow(1.0 + xi * xi, k) * std::norm(phi.mode(j));
  }
  return std::sqrt(acc);
}

KineticField field_difference(const KineticField& a, const KineticField& b) {
  if (a.j_max() != b.j_max() ||
      a.basis().n_modes() != b.basis().n_modes() ||
      a.box_length() != b.box_length()) {
    throw std::invalid_argument("field_difference: mismatched grids");
  }
  KineticField out(a.basis(), a.j_max(), a.box_length());
  for (int j = -a.j_max(); j <= a.j_max(); ++j) {
    out.mode(j) = a.mode(j) - b.mode(j);
  }
  return out;
}

}  // namespace vpfp
