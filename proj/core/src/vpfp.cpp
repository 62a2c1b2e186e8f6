#include "vpfp/vpfp.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace vpfp {

namespace {

constexpr Complex kImag{0.0, 1.0};
constexpr double kNeutralityTol = 1e-12;

Eigen::VectorXcd density_spectrum(const KineticField& field) {
  Eigen::VectorXcd n_hat(field.n_fourier());
  for (int j = -field.j_max(); j <= field.j_max(); ++j) {
    n_hat[j + field.j_max()] = field.density(j);
  }
  return n_hat;
}

// Everything except the stiff diagonal: transport, field coupling, G.
KineticField nonstiff_rhs(const KineticField& f, double eps,
                          FourierWorkspace& ws) {
  const PoissonField phi = poisson_solve(f);
  KineticField rhs = nonlinear_G(f, phi, ws);
  for (int j = -f.j_max(); j <= f.j_max(); ++j) {
    VelocityCoeffs& r = rhs.mode(j);
    r /= eps;
    const double xi = f.wavenumber(j);
    if (xi != 0.0) {
      r -= (kImag * xi / eps) * apply_v(f.mode(j));
      r[1] += phi.mode(j) / eps;
    }
  }
  return rhs;
}

void check_finite(const KineticField& f, double t_label) {
  if (!std::isfinite(f.squared_l2())) {
    throw std::runtime_error("vpfp step: NaN detected (dt = " +
                             std::to_string(t_label) + ")");
  }
}

double uniform_pm1(std::mt19937_64& rng) {
  // Fixed 53-bit mapping; avoids platform-dependent distributions.
  const double u = double(rng() >> 11) * 0x1.0p-53;
  return 2.0 * u - 1.0;
}

}  // namespace

PoissonField poisson_solve(const KineticField& field) {
  if (std::abs(field.density(0)) > kNeutralityTol) {
    throw std::runtime_error(
        "poisson_solve: zero-mode neutrality violated");
  }
  return poisson_gradient(density_spectrum(field), field.j_max(),
                          field.box_length());
}

KineticField nonlinear_G(const KineticField& field, const PoissonField& phi,
                         FourierWorkspace& ws) {
  if (ws.j_max() != field.j_max()) {
    throw std::invalid_argument("nonlinear_G: workspace grid mismatch");
  }
  const int jm = field.j_max();
  const int n_herm = field.basis().n_modes();

  const Eigen::VectorXcd g_phys = ws.to_physical(phi.grad_phi_hat);

  // G_n = g(x) * [(1/2)(v f)_n - (df/dv)_n], slice by Hermite index.
  std::vector<VelocityCoeffs> w(field.n_fourier());
  for (int j = -jm; j <= jm; ++j) {
    w[j + jm] = 0.5 * apply_v(field.mode(j)) - apply_dv(field.mode(j));
  }

  KineticField out(field.basis(), jm, field.box_length());
  Eigen::VectorXcd slice(field.n_fourier());
  for (int n = 0; n < n_herm; ++n) {
    for (int j = -jm; j <= jm; ++j) slice[j + jm] = w[j + jm][n];
    const Eigen::VectorXcd prod =
        ws.to_spectral(g_phys.cwiseProduct(ws.to_physical(slice)));
    for (int j = -jm; j <= jm; ++j) out.mode(j)[n] = prod[j + jm];
  }
  return out;
}

double transport_stability_bound(const KineticField& field, double eps) {
  const double s_max = field.wavenumber(field.j_max());
  return eps / (2.0 * s_max * std::sqrt(double(field.basis().n_modes())));
}

double default_dt(const KineticField& field, double eps, double cap) {
  const double s_max = field.wavenumber(field.j_max());
  return std::min({eps * eps / 4.0,
                   eps / (4.0 * s_max * std::sqrt(double(field.basis().n_modes()))),
                   cap});
}

KineticField step(const KineticField& field, double dt, double eps,
                  FourierWorkspace& ws) {
  if (dt <= 0.0) throw std::invalid_argument("step: dt must be > 0");
  if (dt > transport_stability_bound(field, eps) * (1.0 + 1e-12)) {
    throw std::invalid_argument(
        "step: dt violates the transport stability bound eps/(2 s_max sqrt(N))");
  }
  const int jm = field.j_max();
  const int n_herm = field.basis().n_modes();

  Eigen::VectorXcd decay(n_herm);
  for (int n = 0; n < n_herm; ++n) {
    decay[n] = std::exp(-double(n) * dt / (eps * eps));
  }

  const KineticField k1 = nonstiff_rhs(field, eps, ws);

  KineticField pred(field.basis(), jm, field.box_length());
  for (int j = -jm; j <= jm; ++j) {
    pred.mode(j) =
        decay.array() * (field.mode(j) + dt * k1.mode(j)).array();
  }

  const KineticField k2 = nonstiff_rhs(pred, eps, ws);

  KineticField next(field.basis(), jm, field.box_length());
  for (int j = -jm; j <= jm; ++j) {
    next.mode(j) =
        decay.array() * (field.mode(j) + 0.5 * dt * k1.mode(j)).array();
    next.mode(j) += 0.5 * dt * k2.mode(j);
  }
  check_finite(next, dt);
  return next;
}

EnergyReport energy_monitor(const KineticField& field, double eps, int k) {
  EnergyReport rep;
  double micro_sigma = 0.0;
  double macro = 0.0;
  double fnorm = 0.0;
  double fieldnorm = 0.0;
  for (int j = -field.j_max(); j <= field.j_max(); ++j) {
    const double s2 = std::pow(field.wavenumber(j), 2);
    const double weight = std::pow(1.0 + s2, k);
    const VelocityCoeffs& f = field.mode(j);
    fnorm += weight * f.squaredNorm();
    micro_sigma += weight * sigma_norm_sq(project_P1(f));
    macro += weight * std::norm(f[0]);
    if (j != 0) fieldnorm += weight * std::norm(field.density(j)) / s2;
  }
  rep.energy = fnorm + fieldnorm;
  rep.dissipation = micro_sigma / (eps * eps) + macro + fieldnorm;
  return rep;
}

double hermite_weighted_sum(const KineticField& field) {
  double acc = 0.0;
  for (int j = -field.j_max(); j <= field.j_max(); ++j) {
    const VelocityCoeffs& f = field.mode(j);
    for (Eigen::Index n = 1; n < f.size(); ++n) {
      acc += double(n) * std::norm(f[n]);
    }
  }
  return acc;
}

KineticField make_initial_field(const HermiteBasis& basis, int j_max,
                                double box_length, double delta0,
                                Prepared prepared, std::uint64_t seed,
                                double micro_noise) {
  KineticField f(basis, j_max, box_length);
  f.mode(1)[0] = 0.5 * delta0;
  f.mode(-1)[0] = 0.5 * delta0;
  if (prepared == Prepared::Ill) {
    f.mode(1)[2] = 0.5 * delta0;
    f.mode(-1)[2] = 0.5 * delta0;
  }
  if (micro_noise > 0.0) {
    std::mt19937_64 rng(seed);
    for (int j = 1; j <= j_max; ++j) {
      for (int n = 1; n < basis.n_modes(); ++n) {
        const Complex c(uniform_pm1(rng), uniform_pm1(rng));
        f.mode(j)[n] += micro_noise * delta0 * c;
        f.mode(-j)[n] += micro_noise * delta0 * std::conj(c);
      }
    }
  }
  return f;
}

}  // namespace vpfp
