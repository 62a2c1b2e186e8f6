#include "vpfp/spectral.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace vpfp {

namespace {

constexpr Complex kImag{0.0, 1.0};

// Restricted microscopic operator L - lambda - i s' V on modes 1..N-1.
Eigen::MatrixXcd restricted_resolvent_matrix(Complex lambda, double s_prime,
                                             int n_modes) {
  const int m = n_modes - 1;
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(m, m);
  for (int k = 0; k < m; ++k) {
    a(k, k) = -double(k + 1) - lambda;
    if (k + 1 < m) {
      const Complex off = -kImag * s_prime * std::sqrt(double(k + 2));
      a(k, k + 1) = off;
      a(k + 1, k) = off;
    }
  }
  return a;
}

// Solves (L - lambda - i s' P1 v P1) u = phi_1 on the microscopic chain and
// returns u embedded in the full basis (mode 0 left zero).
VelocityCoeffs resolvent_apply_phi1(Complex lambda, double s_prime,
                                    const HermiteBasis& basis) {
  const int n = basis.n_modes();
  Eigen::MatrixXcd a = restricted_resolvent_matrix(lambda, s_prime, n);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(a);
  if (!lu.isInvertible()) {
    throw std::runtime_error(
        "resolvent: singular microscopic system (lambda outside the validity "
        "region)");
  }
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n - 1);
  rhs[0] = 1.0;
  Eigen::VectorXcd x = lu.solve(rhs);
  VelocityCoeffs u = VelocityCoeffs::Zero(n);
  u.tail(n - 1) = x;
  return u;
}

}  // namespace

Complex resolvent_R11(Complex lambda, double s_prime,
                      const HermiteBasis& basis) {
  return resolvent_apply_phi1(lambda, s_prime, basis)[1];
}

DispersionResult solve_dispersion(double s, double eps,
                                  const FixedPointConfig& cfg,
                                  const HermiteBasis& basis) {
  if (s <= 0.0) throw std::invalid_argument("solve_dispersion: s must be > 0");
  if (eps < 0.0) throw std::invalid_argument("solve_dispersion: eps must be >= 0");
  if (cfg.tol <= 0.0 || cfg.max_iters < 1) {
    throw std::invalid_argument("solve_dispersion: bad fixed-point config");
  }
  const double w = 1.0 + s * s;
  Complex z = cfg.use_default_start ? Complex(-w, 0.0) : cfg.initial_z;
  double delta = 0.0;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    const Complex z_next = w * resolvent_R11(eps * eps * z, eps * s, basis);
    delta = std::abs(z_next - z);
    z = z_next;
    if (delta < cfg.tol) {
      return DispersionResult{z, it, delta};
    }
  }
  throw std::runtime_error(
      "solve_dispersion: fixed point did not converge (eps(1+s) outside the "
      "contraction regime)");
}

Complex solve_dispersion_z(double s, double eps, const HermiteBasis& basis) {
  return solve_dispersion(s, eps, FixedPointConfig{}, basis).z;
}

FluidEigenpair leading_eigenpair(double s, double eps,
                                 const HermiteBasis& basis) {
  const Complex z = solve_dispersion_z(s, eps, basis);
  const Complex lambda0 = eps * eps * z;
  const double w = 1.0 + s * s;

  const VelocityCoeffs u = resolvent_apply_phi1(lambda0, eps * s, basis);
  Complex u_sq = 0.0;  // bilinear square, no mode-0 content
  for (Eigen::Index k = 0; k < u.size(); ++k) u_sq += u[k] * u[k];

  // (e0, e0-bar)_s = ((1+s^2)/s^2) * g with the grouped stabilized factor;
  // g -> 1 as eps -> 0, so the principal root keeps a0(s,0) = s/sqrt(1+s^2).
  const Complex g = 1.0 - eps * eps * w * u_sq;
  if (std::abs(g) < 1e-12) {
    throw std::runtime_error(
        "leading_eigenpair: degenerate bilinear self-pairing");
  }
  const Complex inv_sqrt_g = 1.0 / std::sqrt(g);
  const Complex a0 = s / std::sqrt(w) * inv_sqrt_g;

  VelocityCoeffs psi = kImag * eps * std::sqrt(w) * inv_sqrt_g * u;
  psi[0] = a0;

  const SymbolMatrix b = assemble_B(s, eps, basis);
  const VelocityCoeffs defect = b.entries * psi - lambda0 * psi;
  FluidEigenpair pair;
  pair.lambda0 = lambda0;
  pair.psi0 = std::move(psi);
  pair.a0 = a0;
  pair.residual = weighted_norm(defect, s);
  return pair;
}

std::vector<Complex> direct_spectrum(const SymbolMatrix& sym) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(sym.entries, false);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("direct_spectrum: eigensolver failed");
  }
  std::vector<Complex> eigs(solver.eigenvalues().data(),
                            solver.eigenvalues().data() +
                                solver.eigenvalues().size());
  std::sort(eigs.begin(), eigs.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
  return eigs;
}

std::vector<Complex> direct_spectrum(double s, double eps,
                                     const HermiteBasis& basis) {
  return direct_spectrum(assemble_B(s, eps, basis));
}

VelocityCoeffs fluid_projection(const VelocityCoeffs& f,
                                const FluidEigenpair& pair, double s) {
  return bilinear_pair(f, pair.psi0, s) * pair.psi0;
}

SemigroupSplit semigroup_split(const VelocityCoeffs& f, double s, double eps,
                               double t, const HermiteBasis& basis,
                               double fluid_threshold) {
  if (t < 0.0) throw std::invalid_argument("semigroup_split: t must be >= 0");
  const SymbolMatrix b = assemble_B(s, eps, basis);
  const double tau = t / (eps * eps);
  const Eigen::MatrixXcd propagator = (tau * b.entries).exp();

  SemigroupSplit out;
  const VelocityCoeffs full = propagator * f;
  if (eps * (1.0 + s) <= fluid_threshold) {
    const FluidEigenpair pair = leading_eigenpair(s, eps, basis);
    out.s1 = std::exp(tau * pair.lambda0) * fluid_projection(f, pair, s);
  } else {
    out.s1 = VelocityCoeffs::Zero(f.size());
  }
  out.s2 = full - out.s1;
  return out;
}

MacroRemainderReport s2_n0_bound_check(const VelocityCoeffs& f0, double s,
                                       double eps,
                                       const std::vector<double>& t_grid,
                                       const HermiteBasis& basis,
                                       double a_measured) {
  for (Eigen::Index k = 1; k < f0.size(); ++k) {
    if (std::abs(f0[k]) != 0.0) {
      throw std::invalid_argument("s2_n0_bound_check: f0 must lie in N0");
    }
  }
  MacroRemainderReport report;
  report.a_used = a_measured;
  const double f0_norm = weighted_norm(f0, s);
  for (double t : t_grid) {
    if (f0_norm == 0.0) {
      report.ratios.push_back(0.0);
      continue;
    }
    const SemigroupSplit split = semigroup_split(f0, s, eps, t, basis);
    const double envelope =
        eps * (1.0 + s) * std::exp(-a_measured * t / (eps * eps)) * f0_norm;
    report.ratios.push_back(weighted_norm(split.s2, s) / envelope);
  }
  report.max_ratio = report.ratios.empty()
                         ? 0.0
                         : *std::max_element(report.ratios.begin(),
                                             report.ratios.end());
  return report;
}

}  // namespace vpfp
