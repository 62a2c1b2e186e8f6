#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vpfp/fit.hpp"
#include "vpfp/vpfp.hpp"

namespace vpfp {

inline constexpr const char* kVersion = "0.1.0";

struct StudyConfig {
  std::vector<double> eps_list;  // strictly decreasing, each in (0,1)
  double delta0 = 1e-2;          // <= 0.05 (small-data regime)
  Prepared prepared = Prepared::Well;
  double t_max = 2.0;
  double dt_cap = 1e-3;
  int n_modes = 16;
  int j_max = 32;
  double box_length = 6.283185307179586477;
  int norm_k = 2;
  std::uint64_t seed = 0;
  double micro_noise = 0.0;
  int threads = 1;
  bool skip_layer = false;
  int layer_points = 16;
  int bulk_points = 24;

  void validate() const;
};

/// Shared sampling grid: t = 0, a geometric layer window resolving the
/// smallest eps, reference times, then a uniform bulk up to t_max.
std::vector<double> build_time_grid(const StudyConfig& cfg);

struct SeriesPoint {
  double t = 0.0;
  double err = 0.0;
  double model_err = 0.0;
};

struct EpsSeries {
  double eps = 0.0;
  bool failed = false;
  std::string message;
  std::vector<SeriesPoint> points;
  double mass_drift = 0.0;
  double energy_rate = 0.0;
  double ddp_rate = 0.0;
  double q_stat = 0.0;
  std::optional<double> half_time;  // ill-prepared layer time scale
  double sup_ratio = 0.0;           // sup_t err / (eps e^{-t/2})
};

struct LimitReport {
  StudyConfig config;
  std::string version;
  std::vector<double> t_grid;
  std::vector<EpsSeries> series;
  bool fit_ok = false;
  std::string fit_message;
  RateFit fit;
  std::map<std::string, double> slopes;  // err-vs-eps slope at reference times
  std::optional<double> layer_slope;     // half-time vs eps, ill-prepared
  std::map<std::string, bool> flags;

  bool passed() const;
};

/// Runs the kinetic and drift-diffusion solvers from matched initial data
/// for every eps, records the comparison error on the shared grid, fits
/// the rate profile and fills the acceptance flags.  Per-eps solver
/// failures are recorded and the study continues.
LimitReport run_limit_study(const StudyConfig& cfg);

struct ReportPaths {
  std::filesystem::path csv;
  std::filesystem::path json;
  std::filesystem::path plot_dir;  // one plot_eps_<value>.csv per series
};

ReportPaths default_report_paths(const std::filesystem::path& output_dir);

void emit_report(const LimitReport& report, const ReportPaths& paths);

std::string report_to_json_string(const LimitReport& report);
LimitReport report_from_json_string(const std::string& text);

}  // namespace vpfp
