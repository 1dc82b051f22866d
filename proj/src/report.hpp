#pragma once

#include <json.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "asep/cli.hpp"
#include "asep/transfer.hpp"

namespace asep::cli {

using nlohmann::json;

json config_json(const ExperimentConfig& cfg);
json params_json(const ModelParams& p);
json dist_json(const ConfigDist& d);
json scaled_json(const ScaledValue& v);

/// Starts a JSON report with version and resolved config.
json report_json(const ExperimentConfig& cfg);

void emit_json(std::ostream& os, const json& j);

/// CSV table preceded by the version line and `# key=value` config lines.
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

void emit_csv(std::ostream& os, const ExperimentConfig& cfg, const CsvTable& t);

CsvTable dist_table(const ConfigDist& d);

}  // namespace asep::cli
