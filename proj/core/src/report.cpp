#include <json.hpp>

#include <cstdio>

#include "vpfp/io.hpp"
#include "vpfp/study.hpp"

namespace vpfp {

namespace {

using Json = nlohmann::ordered_json;

Json config_to_json(const StudyConfig& cfg) {
  Json j;
  j["eps_list"] = cfg.eps_list;
  j["delta0"] = cfg.delta0;
  j["prepared"] = cfg.prepared == Prepared::Well ? "well" : "ill";
  j["t_max"] = cfg.t_max;
  j["dt_cap"] = cfg.dt_cap;
  j["n_modes"] = cfg.n_modes;
  j["j_max"] = cfg.j_max;
  j["box_length"] = cfg.box_length;
  j["norm_k"] = cfg.norm_k;
  j["seed"] = cfg.seed;
  j["micro_noise"] = cfg.micro_noise;
  j["threads"] = cfg.threads;
  j["skip_layer"] = cfg.skip_layer;
  j["layer_points"] = cfg.layer_points;
  j["bulk_points"] = cfg.bulk_points;
  return j;
}

StudyConfig config_from_json(const Json& j) {
  StudyConfig cfg;
  cfg.eps_list = j.at("eps_list").get<std::vector<double>>();
  cfg.delta0 = j.at("delta0").get<double>();
  cfg.prepared =
      j.at("prepared").get<std::string>() == "well" ? Prepared::Well
                                                    : Prepared::Ill;
  cfg.t_max = j.at("t_max").get<double>();
  cfg.dt_cap = j.at("dt_cap").get<double>();
  cfg.n_modes = j.at("n_modes").get<int>();
  cfg.j_max = j.at("j_max").get<int>();
  cfg.box_length = j.at("box_length").get<double>();
  cfg.norm_k = j.at("norm_k").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.micro_noise = j.at("micro_noise").get<double>();
  cfg.threads = j.at("threads").get<int>();
  cfg.skip_layer = j.at("skip_layer").get<bool>();
  cfg.layer_points = j.at("layer_points").get<int>();
  cfg.bulk_points = j.at("bulk_points").get<int>();
  return cfg;
}

Json series_to_json(const EpsSeries& s) {
  Json j;
  j["eps"] = s.eps;
  j["failed"] = s.failed;
  j["message"] = s.message;
  Json pts = Json::array();
  for (const SeriesPoint& p : s.points) {
    pts.push_back(Json{{"t", p.t}, {"err", p.err}, {"model_err", p.model_err}});
  }
  j["points"] = pts;
  j["mass_drift"] = s.mass_drift;
  j["energy_rate"] = s.energy_rate;
  j["ddp_rate"] = s.ddp_rate;
  j["q_stat"] = s.q_stat;
  if (s.half_time) j["half_time"] = *s.half_time;
  j["sup_ratio"] = s.sup_ratio;
  return j;
}

EpsSeries series_from_json(const Json& j) {
  EpsSeries s;
  s.eps = j.at("eps").get<double>();
  s.failed = j.at("failed").get<bool>();
  s.message = j.at("message").get<std::string>();
  for (const Json& p : j.at("points")) {
    s.points.push_back(SeriesPoint{p.at("t").get<double>(),
                                   p.at("err").get<double>(),
                                   p.at("model_err").get<double>()});
  }
  s.mass_drift = j.at("mass_drift").get<double>();
  s.energy_rate = j.at("energy_rate").get<double>();
  s.ddp_rate = j.at("ddp_rate").get<double>();
  s.q_stat = j.at("q_stat").get<double>();
  if (j.contains("half_time")) s.half_time = j.at("half_time").get<double>();
  s.sup_ratio = j.at("sup_ratio").get<double>();
  return s;
}

Json report_to_json(const LimitReport& report) {
  Json j;
  j["version"] = report.version;
  j["config"] = config_to_json(report.config);
  j["t_grid"] = report.t_grid;
  Json series = Json::array();
  for (const EpsSeries& s : report.series) series.push_back(series_to_json(s));
  j["series"] = series;
  j["fit_ok"] = report.fit_ok;
  j["fit_message"] = report.fit_message;
  j["fit"] = Json{{"C1", report.fit.c1},
                  {"C2", report.fit.c2},
                  {"a", report.fit.a},
                  {"residual", report.fit.residual},
                  {"converged", report.fit.converged}};
  j["slopes"] = report.slopes;
  if (report.layer_slope) j["layer_slope"] = *report.layer_slope;
  j["flags"] = report.flags;
  j["passed"] = report.passed();
  return j;
}

LimitReport report_from_json(const Json& j) {
  LimitReport report;
  report.version = j.at("version").get<std::string>();
  report.config = config_from_json(j.at("config"));
  report.t_grid = j.at("t_grid").get<std::vector<double>>();
  for (const Json& s : j.at("series")) {
    report.series.push_back(series_from_json(s));
  }
  report.fit_ok = j.at("fit_ok").get<bool>();
  report.fit_message = j.at("fit_message").get<std::string>();
  const Json& f = j.at("fit");
  report.fit.c1 = f.at("C1").get<double>();
  report.fit.c2 = f.at("C2").get<double>();
  report.fit.a = f.at("a").get<double>();
  report.fit.residual = f.at("residual").get<double>();
  report.fit.converged = f.at("converged").get<bool>();
  report.slopes = j.at("slopes").get<std::map<std::string, double>>();
  if (j.contains("layer_slope")) {
    report.layer_slope = j.at("layer_slope").get<double>();
  }
  report.flags = j.at("flags").get<std::map<std::string, bool>>();
  return report;
}

std::string series_csv(const EpsSeries& s) {
  std::string text = "t,err,model_err\n";
  for (const SeriesPoint& p : s.points) {
    text += join_csv_row({format_sci(p.t), format_sci(p.err),
                          format_sci(p.model_err)});
  }
  return text;
}

}  // namespace

std::string report_to_json_string(const LimitReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

LimitReport report_from_json_string(const std::string& text) {
  return report_from_json(Json::parse(text));
}

ReportPaths default_report_paths(const std::filesystem::path& output_dir) {
  ReportPaths paths;
  paths.csv = output_dir / "study.csv";
  paths.json = output_dir / "study.json";
  paths.plot_dir = output_dir;
  return paths;
}

void emit_report(const LimitReport& report, const ReportPaths& paths) {
  std::filesystem::create_directories(paths.csv.parent_path());
  std::filesystem::create_directories(paths.plot_dir);

  std::string csv = "eps,t,err,model_err\n";
  for (const EpsSeries& s : report.series) {
    for (const SeriesPoint& p : s.points) {
      csv += join_csv_row({format_sci(s.eps), format_sci(p.t),
                           format_sci(p.err), format_sci(p.model_err)});
    }
  }
  atomic_write_file(paths.csv, csv);
  atomic_write_file(paths.json, report_to_json_string(report));

  for (const EpsSeries& s : report.series) {
    char name[64];
    std::snprintf(name, sizeof(name), "plot_eps_%g.csv", s.eps);
    atomic_write_file(paths.plot_dir / name, series_csv(s));
  }
}

}  // namespace vpfp
