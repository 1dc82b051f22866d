#include "report.hpp"

#include <cstdio>

namespace asep::cli {

std::string version_line() { return std::string("asep ") + ASEP_VERSION; }

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_config_header(std::ostream& os, const ExperimentConfig& cfg) {
  os << "# " << version_line() << '\n';
  os << "# command=" << to_string(cfg.command) << '\n';
  for (const auto& [key, value] : cfg.raw) os << "# " << key << '=' << value << '\n';
}

json config_json(const ExperimentConfig& cfg) {
  json j = json::object();
  j["command"] = std::string(to_string(cfg.command));
  for (const auto& [key, value] : cfg.raw) j[key] = value;
  return j;
}

json params_json(const ModelParams& p) {
  const Phase ph = classify_phase(p);
  return {{"n", p.n},
          {"q", p.q},
          {"alpha", p.alpha},
          {"beta", p.beta},
          {"u", p.u},
          {"v", p.v},
          {"density_phase", std::string(to_string(ph.density_phase))},
          {"region", std::string(to_string(ph.region))}};
}

json dist_json(const ConfigDist& d) {
  json arr = json::array();
  for (Config c = 0; c < d.size(); ++c) arr.push_back({{"config", config_string(c, d.len())}, {"probability", d[c]}});
  return arr;
}

json scaled_json(const ScaledValue& v) { return {{"mantissa", v.mantissa}, {"log_scale", v.log_scale}}; }

json report_json(const ExperimentConfig& cfg) { return {{"version", version_line()}, {"config", config_json(cfg)}}; }

void emit_json(std::ostream& os, const json& j) { os << j.dump(2) << '\n'; }

void emit_csv(std::ostream& os, const ExperimentConfig& cfg, const CsvTable& t) {
  write_config_header(os, cfg);
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

CsvTable dist_table(const ConfigDist& d) {
  CsvTable t{{"config", "probability"}, {}};
  for (Config c = 0; c < d.size(); ++c) t.add({config_string(c, d.len()), format_double(d[c])});
  return t;
}

}  // namespace asep::cli
