#include "vpfp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace vpfp {

namespace {

double lls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("slope fit: need >= 2 samples");
  }
  const double n = double(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("slope fit: degenerate abscissa");
  return (n * sxy - sx * sy) / denom;
}

double basis_bulk(RateModel model, double eps, double t) {
  switch (model) {
    case RateModel::FirstOrder:
      return eps * std::exp(-0.5 * t);
    case RateModel::SecondOrder:
      return t > 0.0 ? eps * std::exp(-0.5 * t) / std::sqrt(t) : 0.0;
  }
  return 0.0;
}

double basis_layer(RateModel model, double eps, double t, double a) {
  const double decay = std::exp(-a * t / (eps * eps));
  return model == RateModel::SecondOrder ? decay / eps : decay;
}

struct Lls {
  double c1 = 0.0;
  double c2 = 0.0;
  double rss = 0.0;
};

// Linear least squares in (C1, C2) at fixed a over the whole table.
Lls solve_c1_c2(const std::vector<double>& eps_list,
                const std::vector<double>& t_grid,
                const std::vector<std::vector<double>>& errors,
                RateModel model, double a) {
  double a11 = 0, a12 = 0, a22 = 0, b1 = 0, b2 = 0;
  for (size_t i = 0; i < eps_list.size(); ++i) {
    for (size_t k = 0; k < t_grid.size(); ++k) {
      if (model == RateModel::SecondOrder && t_grid[k] == 0.0) continue;
      const double x1 = basis_bulk(model, eps_list[i], t_grid[k]);
      const double x2 = basis_layer(model, eps_list[i], t_grid[k], a);
      const double e = errors[i][k];
      a11 += x1 * x1;
      a12 += x1 * x2;
      a22 += x2 * x2;
      b1 += x1 * e;
      b2 += x2 * e;
    }
  }
  const double det = a11 * a22 - a12 * a12;
  Lls out;
  if (std::abs(det) < 1e-300) {
    // Layer basis numerically collinear or absent; fall back to bulk-only.
    out.c1 = a11 > 0.0 ? b1 / a11 : 0.0;
    out.c2 = 0.0;
  } else {
    out.c1 = (a22 * b1 - a12 * b2) / det;
    out.c2 = (a11 * b2 - a12 * b1) / det;
  }
  for (size_t i = 0; i < eps_list.size(); ++i) {
    for (size_t k = 0; k < t_grid.size(); ++k) {
      if (model == RateModel::SecondOrder && t_grid[k] == 0.0) continue;
      const double m =
          out.c1 * basis_bulk(model, eps_list[i], t_grid[k]) +
          out.c2 * basis_layer(model, eps_list[i], t_grid[k], a);
      const double r = errors[i][k] - m;
      out.rss += r * r;
    }
  }
  return out;
}

}  // namespace

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> lx, ly;
  lx.reserve(x.size());
  ly.reserve(y.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0) {
      throw std::invalid_argument("loglog_slope: nonpositive sample");
    }
    lx.push_back(std::log(x[i]));
    ly.push_back(std::log(y[i]));
  }
  return lls_slope(lx, ly);
}

double semilog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> ly;
  ly.reserve(y.size());
  for (double v : y) {
    if (v <= 0.0) throw std::invalid_argument("semilog_slope: nonpositive sample");
    ly.push_back(std::log(v));
  }
  return lls_slope(x, ly);
}

RateFit rate_fit(const std::vector<double>& eps_list,
                 const std::vector<double>& t_grid,
                 const std::vector<std::vector<double>>& errors,
                 RateModel model) {
  if (eps_list.size() < 3) {
    throw std::invalid_argument("rate_fit: need at least 3 eps values");
  }
  if (errors.size() != eps_list.size()) {
    throw std::invalid_argument("rate_fit: errors/eps shape mismatch");
  }
  for (const auto& row : errors) {
    if (row.size() != t_grid.size()) {
      throw std::invalid_argument("rate_fit: errors/t shape mismatch");
    }
  }
  for (size_t i = 1; i < eps_list.size(); ++i) {
    if (eps_list[i] >= eps_list[i - 1]) {
      throw std::invalid_argument("rate_fit: eps_list must be strictly decreasing");
    }
  }

  const double eps0 = eps_list.front();

  // Stage 1: bulk amplitude estimate from late times at the largest eps,
  // then the layer slope of the remainder in units of t/eps^2.
  double c1_guess = 0.0;
  {
    std::vector<double> ratios;
    for (size_t k = 0; k < t_grid.size(); ++k) {
      if (t_grid[k] >= 0.5) {
        const double x1 = basis_bulk(model, eps0, t_grid[k]);
        if (x1 > 0.0) ratios.push_back(errors[0][k] / x1);
      }
    }
    if (!ratios.empty()) {
      std::nth_element(ratios.begin(), ratios.begin() + ratios.size() / 2,
                       ratios.end());
      c1_guess = ratios[ratios.size() / 2];
    }
  }
  double a_init = 0.5;
  {
    std::vector<double> tau, rem;
    for (size_t k = 0; k < t_grid.size(); ++k) {
      const double t = t_grid[k];
      const double scaled = t / (eps0 * eps0);
      if (scaled <= 0.0 || scaled > 8.0) continue;
      const double r = errors[0][k] - c1_guess * basis_bulk(model, eps0, t);
      if (r > 0.0) {
        tau.push_back(scaled);
        rem.push_back(model == RateModel::SecondOrder ? r * eps0 : r);
      }
    }
    if (tau.size() >= 3) {
      const double slope = semilog_slope(tau, rem);
      if (slope < -1e-3) a_init = -slope;
    }
  }

  // Stage 2: coarse log-spaced scan over a fixed generous range (the
  // stage-1 estimate seeds the scan but must not bound it), then
  // golden-section refinement around the best cell.
  const double scan_lo = 0.02;
  const double scan_hi = 16.0;
  const int scan_points = 96;
  const double scan_ratio =
      std::pow(scan_hi / scan_lo, 1.0 / (scan_points - 1));
  std::vector<double> candidates;
  candidates.reserve(scan_points + 1);
  for (int k = 0; k < scan_points; ++k) {
    candidates.push_back(scan_lo * std::pow(scan_ratio, k));
  }
  candidates.push_back(std::clamp(a_init, scan_lo, scan_hi));
  double a_best = a_init;
  double rss_best = std::numeric_limits<double>::infinity();
  for (double a : candidates) {
    const double rss = solve_c1_c2(eps_list, t_grid, errors, model, a).rss;
    if (rss < rss_best) {
      rss_best = rss;
      a_best = a;
    }
  }

  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = a_best / scan_ratio;
  double hi = a_best * scan_ratio;
  double x1 = hi - phi * (hi - lo);
  double x2 = lo + phi * (hi - lo);
  double f1 = solve_c1_c2(eps_list, t_grid, errors, model, x1).rss;
  double f2 = solve_c1_c2(eps_list, t_grid, errors, model, x2).rss;
  for (int it = 0; it < 200 && (hi - lo) > 1e-12 * std::max(1.0, hi); ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - phi * (hi - lo);
      f1 = solve_c1_c2(eps_list, t_grid, errors, model, x1).rss;
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + phi * (hi - lo);
      f2 = solve_c1_c2(eps_list, t_grid, errors, model, x2).rss;
    }
  }
  a_best = 0.5 * (lo + hi);
  const Lls best = solve_c1_c2(eps_list, t_grid, errors, model, a_best);

  double total = 0.0;
  for (const auto& row : errors) {
    for (double e : row) total += e * e;
  }

  RateFit fit;
  fit.c1 = best.c1;
  fit.c2 = best.c2;
  fit.a = a_best;
  fit.residual = total > 0.0 ? std::sqrt(best.rss / total) : 0.0;
  fit.converged = std::isfinite(fit.c1) && std::isfinite(fit.c2) &&
                  std::isfinite(fit.residual);
  if (!fit.converged) {
    throw std::runtime_error("rate_fit: fit did not converge");
  }
  return fit;
}

double rate_model_value(const RateFit& fit, RateModel model, double eps,
                        double t) {
  return fit.c1 * basis_bulk(model, eps, t) +
         fit.c2 * basis_layer(model, eps, t, fit.a);
}

double layer_half_time(const std::vector<double>& t_grid,
                       const std::vector<double>& err) {
  if (t_grid.size() != err.size() || t_grid.size() < 2) {
    throw std::invalid_argument("layer_half_time: need >= 2 samples");
  }
  const double target = 0.5 * err.front();
  for (size_t k = 1; k < err.size(); ++k) {
    if (err[k] <= target) {
      const double t0 = t_grid[k - 1], t1 = t_grid[k];
      const double e0 = err[k - 1], e1 = err[k];
      if (e0 == e1) return t1;
      return t0 + (t1 - t0) * (e0 - target) / (e0 - e1);
    }
  }
  throw std::runtime_error("layer_half_time: error never dropped to half");
}

double sup_profile_ratio(const std::vector<double>& t_grid,
                         const std::vector<double>& err, double eps) {
  double worst = 0.0;
  for (size_t k = 0; k < t_grid.size(); ++k) {
    worst = std::max(worst, err[k] / (eps * std::exp(-0.5 * t_grid[k])));
  }
  return worst;
}

}  // namespace vpfp
