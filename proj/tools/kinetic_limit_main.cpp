// kinetic-limit: spectral laboratory for the kinetic drift-diffusion limit.
//
// Subcommands: spectrum, dispersion, evolve-linear, evolve-nonlinear,
// evolve-ddp, limit-study, report.  All numeric output is CSV with a header
// row and 17-significant-digit scientific notation.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "vpfp/ddp.hpp"
#include "vpfp/evolve.hpp"
#include "vpfp/io.hpp"
#include "vpfp/spectral.hpp"
#include "vpfp/study.hpp"

namespace {

using namespace vpfp;

struct GlobalOpts {
  std::uint64_t seed = 0;
  int threads = 1;
  std::filesystem::path output_dir = "out";
};

std::filesystem::path resolve_output(const GlobalOpts& global,
                                     const std::string& name) {
  std::filesystem::create_directories(global.output_dir);
  return global.output_dir / name;
}

Prepared parse_prepared(const std::string& text) {
  if (text == "well") return Prepared::Well;
  if (text == "ill") return Prepared::Ill;
  throw CLI::ValidationError("prepared", "must be 'well' or 'ill'");
}

std::vector<double> time_grid(double t_max, int samples, double eps_min,
                              double eps_max, bool skip_layer) {
  std::vector<double> grid{0.0};
  if (!skip_layer) {
    double t = eps_min * eps_min / 4.0;
    const double hi = std::min(20.0 * eps_max * eps_max, t_max);
    while (t < hi) {
      grid.push_back(t);
      t *= 1.5;
    }
  }
  const double lo = std::min(0.1, t_max);
  for (int k = 0; k < samples; ++k) {
    grid.push_back(lo + (t_max - lo) * k / std::max(1, samples - 1));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

int run_spectrum(const GlobalOpts& global, double s, double eps, int n_modes,
                 double fluid_threshold, const std::string& output) {
  const HermiteBasis basis(n_modes);
  const std::vector<Complex> eigs = direct_spectrum(s, eps, basis);

  std::string csv = "index,re,im\n";
  int right_of_half = 0;
  for (size_t k = 0; k < eigs.size(); ++k) {
    csv += join_csv_row({std::to_string(k), format_sci(eigs[k].real()),
                         format_sci(eigs[k].imag())});
    if (eigs[k].real() > -0.5) ++right_of_half;
  }
  const auto path = resolve_output(global, output);
  atomic_write_file(path, csv);

  std::printf("wrote %zu eigenvalues to %s\n", eigs.size(),
              path.string().c_str());
  std::printf("top eigenvalue: %s + %s i; %d right of Re = -1/2\n",
              format_sci(eigs.front().real()).c_str(),
              format_sci(eigs.front().imag()).c_str(), right_of_half);
  if (eps > 0.0 && eps * (1.0 + s) <= fluid_threshold) {
    const FluidEigenpair pair = leading_eigenpair(s, eps, basis);
    std::printf("fluid branch: lambda0 = %s + %s i (residual %.2e)\n",
                format_sci(pair.lambda0.real()).c_str(),
                format_sci(pair.lambda0.imag()).c_str(), pair.residual);
  } else {
    std::printf("no fluid branch: eps(1+s) = %.3f above threshold %.2f\n",
                eps * (1.0 + s), fluid_threshold);
  }
  return 0;
}

int run_dispersion(const GlobalOpts& global, const std::string& s_grid,
                   const std::string& eps_grid, int n_modes, double tol,
                   const std::string& output) {
  const HermiteBasis basis(n_modes);
  FixedPointConfig cfg;
  cfg.tol = tol;

  std::string csv =
      "s,eps,re_z,im_z,residual,iterations,top_direct_eig_re,"
      "top_direct_eig_im\n";
  for (double s : parse_double_list(s_grid)) {
    for (double eps : parse_double_list(eps_grid)) {
      const DispersionResult result = solve_dispersion(s, eps, cfg, basis);
      const Complex defect =
          result.z - (1.0 + s * s) * resolvent_R11(eps * eps * result.z,
                                                   eps * s, basis);
      const std::vector<Complex> eigs = direct_spectrum(s, eps, basis);
      csv += join_csv_row(
          {format_sci(s), format_sci(eps), format_sci(result.z.real()),
           format_sci(result.z.imag()), format_sci(std::abs(defect)),
           std::to_string(result.iterations),
           format_sci(eigs.front().real()),
           format_sci(eigs.front().imag())});
    }
  }
  const auto path = resolve_output(global, output);
  atomic_write_file(path, csv);
  std::printf("wrote dispersion table to %s\n", path.string().c_str());
  return 0;
}

int run_evolve_linear(const GlobalOpts& global, double s,
                      const std::string& eps_list, double t_max,
                      int t_samples, const std::string& prepared, int order,
                      int n_modes, const std::string& output) {
  const HermiteBasis basis(n_modes);
  const std::vector<double> eps_set = parse_double_list(eps_list);
  if (eps_set.empty()) throw CLI::ValidationError("eps-list", "empty");

  const std::vector<double> grid =
      time_grid(t_max, t_samples, eps_set.back(), eps_set.front(), false);

  VelocityCoeffs f0 = basis.zero();
  RateModel model = RateModel::FirstOrder;
  if (order == 1) {
    f0[0] = 1.0;
    if (parse_prepared(prepared) == Prepared::Ill) f0[2] = 1.0;
  } else {
    f0[1] = 1.0;  // second-order comparison needs purely microscopic data
    model = RateModel::SecondOrder;
  }

  std::vector<std::vector<double>> errors;
  for (double eps : eps_set) {
    errors.push_back(order == 1 ? first_order_error(f0, s, eps, grid)
                                : second_order_error(f0, s, eps, grid));
  }

  RateFit fit;
  bool fit_ok = false;
  if (eps_set.size() >= 3) {
    try {
      fit = rate_fit(eps_set, grid, errors, model);
      fit_ok = true;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "rate fit failed: %s\n", e.what());
    }
  }

  std::string csv = "t,eps,error,model_error,fitted_a,fitted_C1,fitted_C2\n";
  for (size_t i = 0; i < eps_set.size(); ++i) {
    for (size_t k = 0; k < grid.size(); ++k) {
      const double model_err =
          fit_ok ? rate_model_value(fit, model, eps_set[i], grid[k]) : 0.0;
      csv += join_csv_row({format_sci(grid[k]), format_sci(eps_set[i]),
                           format_sci(errors[i][k]), format_sci(model_err),
                           format_sci(fit.a), format_sci(fit.c1),
                           format_sci(fit.c2)});
    }
  }
  const auto path = resolve_output(global, output);
  atomic_write_file(path, csv);
  std::printf("wrote %zu rows to %s\n", eps_set.size() * grid.size(),
              path.string().c_str());
  if (fit_ok) {
    std::printf("fit: C1 = %.4e, C2 = %.4e, a = %.4f, residual = %.3f\n",
                fit.c1, fit.c2, fit.a, fit.residual);
  }
  return 0;
}

int run_evolve_nonlinear(const GlobalOpts& global, double eps, double delta0,
                         const std::string& prepared, double t_max, double dt,
                         int n_modes, int j_modes, double box_length,
                         int norm_k, double micro_noise, bool compare_ddp,
                         bool skip_layer, int checkpoint_every,
                         const std::string& output) {
  const HermiteBasis basis(n_modes);
  FourierWorkspace ws(j_modes);
  KineticField f =
      make_initial_field(basis, j_modes, box_length, delta0,
                         parse_prepared(prepared), global.seed, micro_noise);
  DensityField n = density_trace(f);
  const Complex mass0 = f.density(0);

  if (dt <= 0.0) dt = default_dt(f, eps, 1e-3);
  const double record_from = skip_layer ? 10.0 * eps * eps : 0.0;

  std::string csv = compare_ddp ? "t,E,D,mass_drift,hkp_error_vs_ddp\n"
                                : "t,E,D,mass_drift\n";
  auto record = [&](double t) {
    if (t < record_from) return;
    const EnergyReport rep = energy_monitor(f, eps, norm_k);
    std::vector<std::string> cells = {
        format_sci(t), format_sci(rep.energy), format_sci(rep.dissipation),
        format_sci(std::abs(f.density(0) - mass0))};
    if (compare_ddp) {
      const KineticField diff = field_difference(f, lift_to_kinetic(n, basis));
      Eigen::VectorXcd n_diff(n.n_fourier());
      for (int j = -j_modes; j <= j_modes; ++j) {
        n_diff[j + j_modes] = f.density(j) - n.mode(j);
      }
      const PoissonField phi_diff =
          poisson_gradient(n_diff, j_modes, box_length);
      cells.push_back(
          format_sci(hkp_norm(diff, norm_k) +
                     grad_phi_hk_norm(phi_diff, box_length, norm_k)));
    }
    csv += join_csv_row(cells);
  };

  auto checkpoint = [&](long step_index) {
    std::string snap = "j,n,re,im\n";
    for (int j = -j_modes; j <= j_modes; ++j) {
      for (int k = 0; k < n_modes; ++k) {
        snap += join_csv_row({std::to_string(j), std::to_string(k),
                              format_sci(f.mode(j)[k].real()),
                              format_sci(f.mode(j)[k].imag())});
      }
    }
    atomic_write_file(
        resolve_output(global,
                       "checkpoint_" + std::to_string(step_index) + ".csv"),
        snap);
  };

  record(0.0);
  double t = 0.0;
  long step_index = 0;
  while (t < t_max - 1e-13) {
    const double h = std::min(dt, t_max - t);
    f = step(f, h, eps, ws);
    n = step_ddp(n, h, ws);
    t += h;
    ++step_index;
    record(t);
    if (checkpoint_every > 0 && step_index % checkpoint_every == 0) {
      checkpoint(step_index);
    }
  }

  const auto path = resolve_output(global, output);
  atomic_write_file(path, csv);
  std::printf("advanced %ld steps to t = %.4f (dt = %.3e); wrote %s\n",
              step_index, t, dt, path.string().c_str());
  return 0;
}

int run_evolve_ddp(const GlobalOpts& global, double delta0, double t_max,
                   double dt, int j_modes, double box_length,
                   const std::string& output) {
  FourierWorkspace ws(j_modes);
  DensityField n(j_modes, box_length);
  n.mode(1) = delta0 / 2;
  n.mode(-1) = delta0 / 2;

  if (dt <= 0.0) dt = 1e-3;

  std::string csv = "t,n_l2,grad_phi_l2,zero_mode_abs\n";
  auto record = [&](double t) {
    const PoissonField phi = poisson_solve(n);
    csv += join_csv_row({format_sci(t),
                         format_sci(std::sqrt(n.squared_l2())),
                         format_sci(grad_phi_hk_norm(phi, box_length, 0)),
                         format_sci(std::abs(n.mode(0)))});
  };

  record(0.0);
  double t = 0.0;
  long steps = 0;
  while (t < t_max - 1e-13) {
    const double h = std::min(dt, t_max - t);
    n = step_ddp(n, h, ws);
    t += h;
    ++steps;
    record(t);
  }
  const auto path = resolve_output(global, output);
  atomic_write_file(path, csv);
  std::printf("advanced %ld steps to t = %.4f; wrote %s\n", steps, t,
              path.string().c_str());
  return 0;
}

void print_report_summary(const LimitReport& report) {
  std::printf("version %s, %zu series, %zu sample times\n",
              report.version.c_str(), report.series.size(),
              report.t_grid.size());
  for (const EpsSeries& s : report.series) {
    if (s.failed) {
      std::printf("  eps %.4g: FAILED (%s)\n", s.eps, s.message.c_str());
      continue;
    }
    std::printf("  eps %.4g: err(t_max) %.3e, mass drift %.1e, E rate %.2f, "
                "||n|| rate %.2f, Q %.3f\n",
                s.eps, s.points.back().err, s.mass_drift, s.energy_rate,
                s.ddp_rate, s.q_stat);
  }
  if (report.fit_ok) {
    std::printf("fit: C1 = %.4e, C2 = %.4e, a = %.4f, residual = %.3f\n",
                report.fit.c1, report.fit.c2, report.fit.a,
                report.fit.residual);
  } else {
    std::printf("fit unavailable: %s\n", report.fit_message.c_str());
  }
  for (const auto& [key, value] : report.slopes) {
    std::printf("eps-slope %s: %.3f\n", key.c_str(), value);
  }
  if (report.layer_slope) {
    std::printf("layer half-time slope: %.3f\n", *report.layer_slope);
  }
  for (const auto& [name, ok] : report.flags) {
    std::printf("flag %-24s %s\n", name.c_str(), ok ? "pass" : "FAIL");
  }
}

int run_limit_study_cmd(const GlobalOpts& global, StudyConfig cfg,
                        bool assert_flags) {
  cfg.seed = global.seed;
  cfg.threads = global.threads;
  const LimitReport report = run_limit_study(cfg);
  emit_report(report, default_report_paths(global.output_dir));
  print_report_summary(report);
  std::printf("report written to %s\n", global.output_dir.string().c_str());
  if (assert_flags && !report.passed()) return 2;
  return 0;
}

int run_report(const std::string& input, bool assert_flags) {
  std::ifstream in(input, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "cannot open %s\n", input.c_str());
    return 1;
  }
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  const LimitReport report = report_from_json_string(text);
  print_report_summary(report);
  if (assert_flags && !report.passed()) return 2;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral laboratory for the kinetic drift-diffusion limit"};
  app.require_subcommand(1);
  app.set_config("--config")->configurable(false);

  GlobalOpts global;
  app.add_option("--seed", global.seed, "Random seed for microscopic noise")
      ->capture_default_str();
  app.add_option("--threads", global.threads,
                 "Worker threads for independent runs (0 = hardware)")
      ->capture_default_str();
  app.add_option("--output-dir", global.output_dir, "Output directory")
      ->capture_default_str();

  // spectrum
  auto* spectrum = app.add_subcommand(
      "spectrum", "Dense spectrum of the truncated mode operator");
  double sp_s = 1.0, sp_eps = 0.05, sp_threshold = kDefaultFluidThreshold;
  int sp_n = 48;
  std::string sp_out = "spectrum.csv";
  spectrum->add_option("--s", sp_s, "Wavenumber magnitude")->capture_default_str();
  spectrum->add_option("--eps", sp_eps, "Scaling parameter")->capture_default_str();
  spectrum->add_option("--n-modes", sp_n, "Hermite truncation")->capture_default_str();
  spectrum->add_option("--fluid-threshold", sp_threshold,
                       "Validity bound on eps(1+s) for the fluid branch")
      ->capture_default_str();
  spectrum->add_option("--output", sp_out, "CSV file name")->capture_default_str();

  // dispersion
  auto* dispersion = app.add_subcommand(
      "dispersion", "Fixed-point eigenvalue against the dense eigensolve");
  std::string di_s = "0.5,1,2", di_eps = "1e-3,1e-2,0.05,0.1";
  int di_n = 48;
  double di_tol = 1e-13;
  std::string di_out = "dispersion.csv";
  dispersion->add_option("--s-grid", di_s, "Comma list of s values")->capture_default_str();
  dispersion->add_option("--eps-grid", di_eps, "Comma list of eps values")->capture_default_str();
  dispersion->add_option("--n-modes", di_n, "Hermite truncation")->capture_default_str();
  dispersion->add_option("--tol", di_tol, "Fixed-point tolerance")->capture_default_str();
  dispersion->add_option("--output", di_out, "CSV file name")->capture_default_str();

  // evolve-linear
  auto* elin = app.add_subcommand(
      "evolve-linear", "Fluid-approximation error of the mode semigroup");
  double el_s = 1.0, el_tmax = 3.0;
  int el_samples = 30, el_order = 1, el_n = 48;
  std::string el_eps = "0.2,0.1,0.05,0.025", el_prepared = "ill",
              el_out = "evolve_linear.csv";
  elin->add_option("--s", el_s, "Wavenumber magnitude")->capture_default_str();
  elin->add_option("--eps-list", el_eps, "Comma list, strictly decreasing")->capture_default_str();
  elin->add_option("--t-max", el_tmax, "Final time")->capture_default_str();
  elin->add_option("--t-samples", el_samples, "Bulk sample count")->capture_default_str();
  elin->add_option("--prepared", el_prepared, "well | ill")->capture_default_str();
  elin->add_option("--order", el_order, "Fluid approximation order (1 or 2)")
      ->check(CLI::IsMember({1, 2}))->capture_default_str();
  elin->add_option("--n-modes", el_n, "Hermite truncation")->capture_default_str();
  elin->add_option("--output", el_out, "CSV file name")->capture_default_str();

  // evolve-nonlinear
  auto* enl = app.add_subcommand("evolve-nonlinear",
                                 "Time-step the nonlinear kinetic system");
  double en_eps = 0.1, en_delta0 = 1e-2, en_tmax = 1.0, en_dt = 0.0;
  double en_box = 2.0 * std::numbers::pi, en_noise = 0.0;
  int en_n = 16, en_j = 32, en_k = 2, en_checkpoint = 0;
  bool en_compare = false, en_skip = false;
  std::string en_prepared = "well", en_out = "evolve_nonlinear.csv";
  enl->add_option("--eps", en_eps, "Scaling parameter")->capture_default_str();
  enl->add_option("--delta0", en_delta0, "Perturbation amplitude")->capture_default_str();
  enl->add_option("--prepared", en_prepared, "well | ill")->capture_default_str();
  enl->add_option("--t-max", en_tmax, "Final time")->capture_default_str();
  enl->add_option("--dt", en_dt, "Step size (0 = policy default)")->capture_default_str();
  enl->add_option("--n-modes", en_n, "Hermite truncation")->capture_default_str();
  enl->add_option("--j-modes", en_j, "Fourier modes per sign")->capture_default_str();
  enl->add_option("--box-length", en_box, "Periodic box length")->capture_default_str();
  enl->add_option("--norm-k", en_k, "Sobolev index for monitors")->capture_default_str();
  enl->add_option("--micro-noise", en_noise, "Seeded microscopic noise amplitude")->capture_default_str();
  enl->add_flag("--compare-ddp", en_compare, "Track the drift-diffusion error");
  enl->add_flag("--skip-layer", en_skip, "Record only after t = 10 eps^2");
  enl->add_option("--checkpoint-every", en_checkpoint, "Steps between checkpoints")->capture_default_str();
  enl->add_option("--output", en_out, "CSV file name")->capture_default_str();

  // evolve-ddp
  auto* eddp = app.add_subcommand("evolve-ddp",
                                  "Time-step the drift-diffusion system");
  double ed_delta0 = 1e-2, ed_tmax = 1.0, ed_dt = 0.0;
  double ed_box = 2.0 * std::numbers::pi;
  int ed_j = 32;
  std::string ed_out = "evolve_ddp.csv";
  eddp->add_option("--delta0", ed_delta0, "Perturbation amplitude")->capture_default_str();
  eddp->add_option("--t-max", ed_tmax, "Final time")->capture_default_str();
  eddp->add_option("--dt", ed_dt, "Step size (0 = 1e-3)")->capture_default_str();
  eddp->add_option("--j-modes", ed_j, "Fourier modes per sign")->capture_default_str();
  eddp->add_option("--box-length", ed_box, "Periodic box length")->capture_default_str();
  eddp->add_option("--output", ed_out, "CSV file name")->capture_default_str();

  // limit-study
  auto* study = app.add_subcommand(
      "limit-study", "Kinetic vs drift-diffusion convergence study");
  StudyConfig cfg;
  std::string st_eps = "0.4,0.2,0.1,0.05", st_prepared = "well";
  bool st_assert = false;
  study->add_option("--eps-list", st_eps, "Comma list, strictly decreasing")->capture_default_str();
  study->add_option("--delta0", cfg.delta0, "Perturbation amplitude")->capture_default_str();
  study->add_option("--prepared", st_prepared, "well | ill")->capture_default_str();
  study->add_option("--t-max", cfg.t_max, "Final time")->capture_default_str();
  study->add_option("--n-modes", cfg.n_modes, "Hermite truncation")->capture_default_str();
  study->add_option("--j-modes", cfg.j_max, "Fourier modes per sign")->capture_default_str();
  study->add_option("--box-length", cfg.box_length, "Periodic box length")->capture_default_str();
  study->add_option("--norm-k", cfg.norm_k, "Sobolev index of the error norm")->capture_default_str();
  study->add_option("--micro-noise", cfg.micro_noise, "Seeded microscopic noise amplitude")->capture_default_str();
  study->add_option("--layer-points", cfg.layer_points, "Layer grid points")->capture_default_str();
  study->add_option("--bulk-points", cfg.bulk_points, "Bulk grid points")->capture_default_str();
  study->add_flag("--skip-layer", cfg.skip_layer, "Sample the bulk window only");
  study->add_flag("--assert", st_assert, "Exit 2 if any acceptance flag fails");

  // report
  auto* report_cmd = app.add_subcommand("report", "Summarize a study JSON");
  std::string rp_input;
  bool rp_assert = false;
  report_cmd->add_option("--input", rp_input, "study.json path")->required();
  report_cmd->add_flag("--assert", rp_assert, "Exit 2 if any flag failed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) {
      return run_spectrum(global, sp_s, sp_eps, sp_n, sp_threshold, sp_out);
    }
    if (dispersion->parsed()) {
      return run_dispersion(global, di_s, di_eps, di_n, di_tol, di_out);
    }
    if (elin->parsed()) {
      return run_evolve_linear(global, el_s, el_eps, el_tmax, el_samples,
                               el_prepared, el_order, el_n, el_out);
    }
    if (enl->parsed()) {
      return run_evolve_nonlinear(global, en_eps, en_delta0, en_prepared,
                                  en_tmax, en_dt, en_n, en_j, en_box, en_k,
                                  en_noise, en_compare, en_skip,
                                  en_checkpoint, en_out);
    }
    if (eddp->parsed()) {
      return run_evolve_ddp(global, ed_delta0, ed_tmax, ed_dt, ed_j, ed_box,
                            ed_out);
    }
    if (study->parsed()) {
      cfg.eps_list = parse_double_list(st_eps);
      cfg.prepared = parse_prepared(st_prepared);
      return run_limit_study_cmd(global, cfg, st_assert);
    }
    if (report_cmd->parsed()) {
      return run_report(rp_input, rp_assert);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
