#pragma once

#include <Eigen/Dense>
#include <vector>

namespace vpfp {

/// Least-squares slope of log(y) against log(x); x, y must be positive.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Least-squares slope of log(y) against x (exponential decay rate is the
/// negated slope).
double semilog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct RateFit {
  double c1 = 0.0;
  double c2 = 0.0;
  double a = 0.0;
  double residual = 0.0;  // relative, ||err - model|| / ||err||
  bool converged = false;
};

enum class RateModel {
  FirstOrder,   // C1 eps e^{-t/2} + C2 e^{-a t / eps^2}
  SecondOrder,  // C1 eps t^{-1/2} e^{-t/2} + C2 (1/eps) e^{-a t / eps^2}
};

/// Two-stage fit of the layer + bulk decay profile: a is initialized from
/// the early-time log-slope of the remainder at the largest eps, then
/// (C1, C2) solve a linear least-squares problem and a is refined by a
/// bracketed scan.  Throws on non-convergence; never silently defaults.
/// errors is row-major: errors[i][k] = err(t_grid[k]; eps_list[i]),
/// eps_list strictly decreasing, at least 3 entries.
RateFit rate_fit(const std::vector<double>& eps_list,
                 const std::vector<double>& t_grid,
                 const std::vector<std::vector<double>>& errors,
                 RateModel model = RateModel::FirstOrder);

/// Model profile value for a fitted parameter set.
double rate_model_value(const RateFit& fit, RateModel model, double eps,
                        double t);

/// First time at which err falls below half of its first-sample value
/// (linear interpolation between bracketing samples); the layer time scale.
double layer_half_time(const std::vector<double>& t_grid,
                       const std::vector<double>& err);

/// sup over the grid of err / (eps e^{-t/2}), the uniform-in-time statistic
/// for well-prepared data.
double sup_profile_ratio(const std::vector<double>& t_grid,
                         const std::vector<double>& err, double eps);

}  // namespace vpfp
