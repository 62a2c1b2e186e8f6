#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_rng.hpp"
#include "vpfp/fit.hpp"

using namespace vpfp;

namespace {

std::vector<double> layer_bulk_grid(double eps_min, double eps_max,
                                    double t_max) {
  std::vector<double> grid;
  double t = eps_min * eps_min / 4.0;
  while (t < 20.0 * eps_max * eps_max) {
    grid.push_back(t);
    t *= 1.6;
  }
  for (double u = 0.1; u <= t_max; u += 0.1) grid.push_back(u);
  return grid;
}

std::vector<std::vector<double>> synthesize(
    const std::vector<double>& eps_list, const std::vector<double>& grid,
    double c1, double c2, double a) {
  std::vector<std::vector<double>> table;
  for (double eps : eps_list) {
    std::vector<double> row;
    for (double t : grid) {
      row.push_back(c1 * eps * std::exp(-0.5 * t) +
                    c2 * std::exp(-a * t / (eps * eps)));
    }
    table.push_back(std::move(row));
  }
  return table;
}

}  // namespace

TEST_CASE("log-log and semilog slope fitting") {
  std::vector<double> x = {1.0, 2.0, 4.0, 8.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * v * v * v);
  CHECK(loglog_slope(x, y) == doctest::Approx(3.0).epsilon(1e-12));

  std::vector<double> t = {0.0, 0.5, 1.0, 2.0};
  std::vector<double> decay;
  for (double v : t) decay.push_back(7.0 * std::exp(-1.3 * v));
  CHECK(semilog_slope(t, decay) == doctest::Approx(-1.3).epsilon(1e-12));

  CHECK_THROWS_AS(loglog_slope({1.0, 2.0}, {1.0, -1.0}),
                  std::invalid_argument);
}

TEST_CASE("exact model data is recovered to high accuracy") {
  const std::vector<double> eps_list = {0.2, 0.1, 0.05, 0.025};
  const std::vector<double> grid = layer_bulk_grid(0.025, 0.2, 3.0);
  const auto table = synthesize(eps_list, grid, 1.0, 1.0, 0.5);
  const RateFit fit = rate_fit(eps_list, grid, table);
  CHECK(fit.converged);
  CHECK(fit.c1 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.c2 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.a == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fit.residual < 1e-6);
}

TEST_CASE("five percent multiplicative noise keeps parameters within 15%") {
  const std::vector<double> eps_list = {0.2, 0.1, 0.05, 0.025};
  const std::vector<double> grid = layer_bulk_grid(0.025, 0.2, 3.0);
  std::mt19937_64 rng(101);
  for (int mc = 0; mc < 8; ++mc) {
    auto table = synthesize(eps_list, grid, 1.0, 1.0, 0.5);
    for (auto& row : table) {
      for (double& v : row) {
        v *= 1.0 + 0.05 * vpfp::testing::uniform_pm1(rng);
      }
    }
    const RateFit fit = rate_fit(eps_list, grid, table);
    CHECK(std::abs(fit.c1 - 1.0) <= 0.15);
    CHECK(std::abs(fit.c2 - 1.0) <= 0.15);
    CHECK(std::abs(fit.a - 0.5) <= 0.15 * 0.5);
  }
}

TEST_CASE("a layer-free table yields a negligible layer amplitude") {
  const std::vector<double> eps_list = {0.2, 0.1, 0.05, 0.025};
  const std::vector<double> grid = layer_bulk_grid(0.025, 0.2, 3.0);
  const auto table = synthesize(eps_list, grid, 1.0, 0.0, 0.5);
  const RateFit fit = rate_fit(eps_list, grid, table);
  CHECK(fit.c1 == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(fit.c2) <= 1e-6 * fit.c1);
}

TEST_CASE("shape validation") {
  const std::vector<double> grid = {0.0, 0.5, 1.0};
  CHECK_THROWS_AS(
      rate_fit({0.2, 0.1}, grid, {{1, 1, 1}, {1, 1, 1}}),
      std::invalid_argument);
  CHECK_THROWS_AS(
      rate_fit({0.1, 0.2, 0.4}, grid, {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}),
      std::invalid_argument);
  CHECK_THROWS_AS(rate_fit({0.4, 0.2, 0.1}, grid, {{1, 1, 1}, {1, 1, 1}}),
                  std::invalid_argument);
}

TEST_CASE("layer half-time on synthetic profiles") {
  // err(t) = e^{-t/tau}: half time is tau ln 2.
  const double tau = 0.01;
  std::vector<double> grid, err;
  for (double t = 0.0; t <= 0.2; t += 1e-3) {
    grid.push_back(t);
    err.push_back(std::exp(-t / tau));
  }
  CHECK(layer_half_time(grid, err) ==
        doctest::Approx(tau * std::log(2.0)).epsilon(1e-3));

  std::vector<double> flat(grid.size(), 1.0);
  CHECK_THROWS_AS(layer_half_time(grid, flat), std::runtime_error);
}

TEST_CASE("profile ratio statistic") {
  const std::vector<double> grid = {0.0, 1.0, 2.0};
  const double eps = 0.1;
  std::vector<double> err;
  for (double t : grid) err.push_back(3.0 * eps * std::exp(-0.5 * t));
  CHECK(sup_profile_ratio(grid, err, eps) == doctest::Approx(3.0));
}
