#include "vpfp/evolve.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace vpfp {

LinearModeEvolver::LinearModeEvolver(double s, double eps,
                                     const HermiteBasis& basis)
    : s_(s), eps_(eps), symbol_(assemble_B(s, eps, basis)) {
  if (eps <= 0.0) {
    throw std::invalid_argument("LinearModeEvolver: eps must be > 0");
  }
}

const Eigen::MatrixXcd& LinearModeEvolver::propagator(double t) const {
  {
    std::shared_lock lock(mutex_);
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  auto it = cache_.find(t);
  if (it == cache_.end()) {
    const double tau = t / (eps_ * eps_);
    it = cache_.emplace(t, (tau * symbol_.entries).exp()).first;
  }
  return it->second;
}

VelocityCoeffs LinearModeEvolver::evolve(const VelocityCoeffs& f,
                                         double t) const {
  if (t < 0.0) throw std::invalid_argument("evolve: t must be >= 0");
  if (t == 0.0) return f;
  return propagator(t) * f;
}

VelocityCoeffs evolve_mode(const ModeState& state, double t) {
  const HermiteBasis basis(static_cast<int>(state.f.size()));
  LinearModeEvolver evolver(state.s, state.eps, basis);
  return evolver.evolve(state.f, t);
}

Complex evolve_ddp_mode(Complex n0_hat, double s, double t) {
  if (t < 0.0) throw std::invalid_argument("evolve_ddp_mode: t must be >= 0");
  return std::exp(-(1.0 + s * s) * t) * n0_hat;
}

std::vector<double> first_order_error(const VelocityCoeffs& f0, double s,
                                      double eps,
                                      const std::vector<double>& t_grid) {
  const HermiteBasis basis(static_cast<int>(f0.size()));
  LinearModeEvolver evolver(s, eps, basis);
  std::vector<double> errs;
  errs.reserve(t_grid.size());
  for (double t : t_grid) {
    VelocityCoeffs diff = evolver.evolve(f0, t);
    diff[0] -= evolve_ddp_mode(f0[0], s, t);
    errs.push_back(weighted_norm(diff, s));
  }
  return errs;
}

std::vector<double> first_order_error_well_prepared(
    Complex n0_hat, double s, double eps, const std::vector<double>& t_grid,
    const HermiteBasis& basis) {
  VelocityCoeffs f0 = basis.zero();
  f0[0] = n0_hat;
  return first_order_error(f0, s, eps, t_grid);
}

std::vector<double> second_order_error(const VelocityCoeffs& f0, double s,
                                       double eps,
                                       const std::vector<double>& t_grid) {
  if (std::abs(f0[0]) != 0.0) {
    throw std::invalid_argument("second_order_error: requires P0 f0 = 0");
  }
  const HermiteBasis basis(static_cast<int>(f0.size()));
  LinearModeEvolver evolver(s, eps, basis);
  const Complex m0 = f0[1];
  const Complex div_m0 = Complex(0.0, 1.0) * s * m0;
  std::vector<double> errs;
  errs.reserve(t_grid.size());
  for (double t : t_grid) {
    VelocityCoeffs diff = evolver.evolve(f0, t) / eps;
    diff[0] += evolve_ddp_mode(div_m0, s, t);
    errs.push_back(weighted_norm(diff, s));
  }
  return errs;
}

}  // namespace vpfp
