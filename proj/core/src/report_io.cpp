#include "qrc/report_io.hpp"

#include <cstdio>
#include <fstream>

namespace qrc {

using nlohmann::json;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

json grid_to_json(const UGrid& grid) {
  return json{{"dimension", grid.dim},
              {"points_per_dim", grid.points_per_dim},
              {"min", grid.lo},
              {"max", grid.hi}};
}

UGrid grid_from_json(const json& j) {
  UGrid g;
  g.dim = j.at("dimension").get<int>();
  g.points_per_dim = j.at("points_per_dim").get<int>();
  g.lo = j.at("min").get<double>();
  g.hi = j.at("max").get<double>();
  return g;
}

json rvec_to_json(const RVec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

RVec rvec_from_json(const json& a) {
  RVec v(a.size());
  for (size_t i = 0; i < a.size(); ++i) v(static_cast<Eigen::Index>(i)) = a[i].get<double>();
  return v;
}

}  // namespace

json report_to_json(const LinearityReport& report) {
  json nodes = json::array();
  for (const auto& n : report.nodes) {
    nodes.push_back(json{{"index", n.index},
                         {"label", n.label},
                         {"verdict", to_string(n.verdict)},
                         {"max_abs_residual", n.max_abs_residual},
                         {"relative_residual", n.relative_residual},
                         {"value_range", n.value_range},
                         {"coefficients", rvec_to_json(n.coefficients)}});
  }
  json j{{"schema_version", kReportSchemaVersion},
         {"probe", report.probe},
         {"encoding", report.encoding},
         {"fit_scope", report.fit_scope},
         {"seed", report.seed},
         {"tolerances", json{{"linear", report.tau_lin}, {"nonlinear", report.tau_nonlin}}},
         {"u_grid", grid_to_json(report.grid)},
         {"priors", json{{"kind", to_string(report.priors.kind)},
                         {"count", report.priors.count},
                         {"seed", report.priors.seed}}},
         {"nodes", nodes}};
  if (!report.read_times.empty()) j["read_times"] = report.read_times;
  return j;
}

LinearityReport report_from_json(const json& j) {
  if (j.at("schema_version").get<int>() != kReportSchemaVersion)
    throw ConfigError("unsupported report schema version");
  LinearityReport report;
  report.probe = j.at("probe").get<std::string>();
  report.encoding = j.at("encoding").get<std::string>();
  report.fit_scope = j.at("fit_scope").get<std::string>();
  report.seed = j.at("seed").get<std::uint64_t>();
  report.tau_lin = j.at("tolerances").at("linear").get<double>();
  report.tau_nonlin = j.at("tolerances").at("nonlinear").get<double>();
  report.grid = grid_from_json(j.at("u_grid"));
  report.priors.kind = prior_kind_from_string(j.at("priors").at("kind").get<std::string>());
  report.priors.count = j.at("priors").at("count").get<int>();
  report.priors.seed = j.at("priors").at("seed").get<std::uint64_t>();
  if (j.contains("read_times")) report.read_times = j.at("read_times").get<std::vector<double>>();
  for (const auto& nj : j.at("nodes")) {
    NodeReport n;
    n.index = nj.at("index").get<int>();
    n.label = nj.at("label").get<std::string>();
    n.verdict = verdict_from_string(nj.at("verdict").get<std::string>());
    n.max_abs_residual = nj.at("max_abs_residual").get<double>();
    n.relative_residual = nj.at("relative_residual").get<double>();
    n.value_range = nj.at("value_range").get<double>();
    n.coefficients = rvec_from_json(nj.at("coefficients"));
    report.nodes.push_back(std::move(n));
  }
  return report;
}

std::string nodes_csv(const LinearityReport& report) {
  std::string out;
  const int dim = report.grid.dim;
  for (int k = 0; k < dim; ++k) out += "u_" + std::to_string(k) + ",";
  out += "node_index,value,residual\n";
  for (const auto& s : report.samples) {
    for (int k = 0; k < dim; ++k) out += format_double(s.u(k)) + ",";
    out += std::to_string(s.node) + "," + format_double(s.value) + "," +
           format_double(s.residual) + "\n";
  }
  return out;
}

std::string stm_csv(const StmResult& result) {
  std::string out = "delay,r2\n";
  for (size_t i = 0; i < result.delays.size(); ++i)
    out += std::to_string(result.delays[i]) + "," + format_double(result.r2[i]) + "\n";
  return out;
}

std::string sine_csv(const SineResult& result, const UGrid& grid) {
  (void)grid;
  std::string out = "param,nmse\n";
  const double var = (result.targets.array() - result.targets.mean()).square().mean();
  for (Eigen::Index i = 0; i < result.targets.size(); ++i) {
    const double err = result.predictions(i) - result.targets(i);
    out += format_double(result.targets(i)) + "," + format_double(err * err / var) + "\n";
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path();
  std::filesystem::create_directories(dir);
  const auto tmp = dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.good()) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace qrc
