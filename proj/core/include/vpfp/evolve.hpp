#pragma once

#include <map>
#include <shared_mutex>
#include <vector>

#include "vpfp/field.hpp"
#include "vpfp/symbol.hpp"

namespace vpfp {

struct ModeState {
  VelocityCoeffs f;
  double s = 0.0;
  double eps = 0.0;
  double t = 0.0;
};

/// Exact single-mode propagator exp((t/eps^2) B_eps(s)) via scaling-and-
/// squaring matrix exponentials, cached per evolution time.  Reads are
/// safe from any number of threads; cache writes are serialized.
class LinearModeEvolver {
 public:
  LinearModeEvolver(double s, double eps, const HermiteBasis& basis);

  VelocityCoeffs evolve(const VelocityCoeffs& f, double t) const;

  double s() const { return s_; }
  double eps() const { return eps_; }
  const SymbolMatrix& symbol() const { return symbol_; }

 private:
  const Eigen::MatrixXcd& propagator(double t) const;

  double s_;
  double eps_;
  SymbolMatrix symbol_;
  mutable std::map<double, Eigen::MatrixXcd> cache_;
  mutable std::shared_mutex mutex_;
};

/// One-shot helper around LinearModeEvolver.
VelocityCoeffs evolve_mode(const ModeState& state, double t);

/// Exact linearized drift-diffusion factor e^{-(1+s^2) t} n0_hat.
Complex evolve_ddp_mode(Complex n0_hat, double s, double t);

/// ||e^{(t/eps^2)B} f0 - e^{tD} n0 sqrt(M)||_s per sample time, the
/// mode-wise first-order fluid approximation error with n0 = f0[0].
std::vector<double> first_order_error(const VelocityCoeffs& f0, double s,
                                      double eps,
                                      const std::vector<double>& t_grid);

/// Same error for macroscopic data f0 = n0_hat sqrt(M); for such data the
/// error has no initial layer.
std::vector<double> first_order_error_well_prepared(
    Complex n0_hat, double s, double eps, const std::vector<double>& t_grid,
    const HermiteBasis& basis);

/// ||(1/eps) e^{(t/eps^2)B} f0 + e^{tD} (i s m0) sqrt(M)||_s for purely
/// microscopic data (f0[0] = 0), with the momentum trace m0 = f0[1].
std::vector<double> second_order_error(const VelocityCoeffs& f0, double s,
                                       double eps,
                                       const std::vector<double>& t_grid);

}  // namespace vpfp
