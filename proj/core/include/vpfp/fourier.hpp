#pragma once

#include <Eigen/Dense>
#include <complex>
#include <memory>

namespace vpfp {

/// Serial FFT workspace for the pseudospectral products.  The spectral
/// representation is a centered vector of 2*j_max+1 coefficients of
/// e^{i xi_j x}; the physical grid has grid_size >= 3*j_max + 1 points so
/// that quadratic products of retained modes are alias-free after the
/// 2/3-rule truncation back to |j| <= j_max.
class FourierWorkspace {
 public:
  explicit FourierWorkspace(int j_max);
  ~FourierWorkspace();

  FourierWorkspace(const FourierWorkspace&) = delete;
  FourierWorkspace& operator=(const FourierWorkspace&) = delete;

  int j_max() const { return j_max_; }
  int grid_size() const { return grid_size_; }

  /// Centered modes -> physical grid values.
  Eigen::VectorXcd to_physical(const Eigen::VectorXcd& modes);

  /// Physical grid values -> centered modes (truncated to |j| <= j_max).
  Eigen::VectorXcd to_spectral(const Eigen::VectorXcd& values);

  /// Dealiased product of two centered spectra.
  Eigen::VectorXcd product(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

 private:
  struct Impl;
  int j_max_;
  int grid_size_;
  std::unique_ptr<Impl> impl_;
};

}  // namespace vpfp
