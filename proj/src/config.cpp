#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "asep/cli.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace asep::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const std::string& expected) {
  throw ValidationError("key '" + key + "': expected " + expected + ", got '" + value + "'");
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Exact: return "exact";
    case Command::Motzkin: return "motzkin";
    case Command::Polymer: return "polymer";
    case Command::Shock: return "shock";
    case Command::Mpa: return "mpa";
    case Command::Sim: return "sim";
    case Command::Lpp: return "lpp";
    case Command::Compare: return "compare";
  }
  return "?";
}

Command parse_command(std::string_view s) {
  for (Command c : {Command::Exact, Command::Motzkin, Command::Polymer, Command::Shock, Command::Mpa, Command::Sim,
                    Command::Lpp, Command::Compare}) {
    if (to_string(c) == s) return c;
  }
  throw ValidationError("command: unknown command '" + std::string(s) + "'");
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "n",      "q",     "alpha",   "beta",  "u",        "v",      "k",      "epsilon", "c_q",
      "interval", "h_max", "signed", "samples", "burn_in", "gap",  "seed",   "replicas", "t",
      "eta",    "window", "mode",  "position", "i",     "j",        "m",      "moment", "n_list",
      "against", "rho",  "width",  "format", "out",     "threads"};
  return keys;
}

std::map<std::string, std::string> read_config_file(std::istream& is, const std::string& origin) {
  std::map<std::string, std::string> values;
  std::string line;
  int lineno = 0;
  const auto& keys = known_keys();
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty() || line.front() == '[') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ValidationError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
    values[key] = trim(line.substr(eq + 1));
  }
  return values;
}

ExperimentConfig merge_config(Command command, const std::map<std::string, std::string>& file_values,
                              const std::map<std::string, std::string>& flag_values) {
  ExperimentConfig cfg;
  cfg.command = command;
  cfg.raw = file_values;
  for (const auto& [key, value] : flag_values) {
    auto it = cfg.raw.find(key);
    if (it != cfg.raw.end() && it->second != value) {
      cfg.warnings.push_back("flag --" + key + "=" + value + " overrides config file value " + it->second);
    }
    cfg.raw[key] = value;
  }
  const std::string fmt = cfg.get("format", "csv");
  if (fmt == "csv") {
    cfg.format = Format::Csv;
  } else if (fmt == "json") {
    cfg.format = Format::Json;
  } else {
    bad_value("format", fmt, "csv or json");
  }
  cfg.out = cfg.get("out", "");
  return cfg;
}

std::string ExperimentConfig::get(const std::string& key, const std::string& fallback) const {
  auto it = raw.find(key);
  return it == raw.end() ? fallback : it->second;
}

long ExperimentConfig::get_int(const std::string& key, long fallback) const {
  if (!has(key)) return fallback;
  const std::string s = raw.at(key);
  std::size_t used = 0;
  long x = 0;
  try {
    x = std::stol(s, &used);
  } catch (const std::exception&) {
    bad_value(key, s, "an integer");
  }
  if (used != s.size()) bad_value(key, s, "an integer");
  return x;
}

long ExperimentConfig::require_int(const std::string& key) const {
  if (!has(key)) throw ValidationError("key '" + key + "': required for command " + std::string(to_string(command)));
  return get_int(key, 0);
}

double ExperimentConfig::get_double(const std::string& key, double fallback) const {
  if (!has(key)) return fallback;
  const std::string s = raw.at(key);
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(s, &used);
  } catch (const std::exception&) {
    bad_value(key, s, "a number");
  }
  if (used != s.size() || !std::isfinite(x)) bad_value(key, s, "a finite number");
  return x;
}

double ExperimentConfig::require_double(const std::string& key) const {
  if (!has(key)) throw ValidationError("key '" + key + "': required for command " + std::string(to_string(command)));
  return get_double(key, 0.0);
}

std::vector<long> ExperimentConfig::get_int_list(const std::string& key, const std::vector<long>& fallback) const {
  if (!has(key)) return fallback;
  std::vector<long> out;
  std::stringstream ss(raw.at(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    std::size_t used = 0;
    long x = 0;
    try {
      x = std::stol(item, &used);
    } catch (const std::exception&) {
      bad_value(key, raw.at(key), "a comma-separated list of integers");
    }
    if (used != item.size()) bad_value(key, raw.at(key), "a comma-separated list of integers");
    out.push_back(x);
  }
  if (out.empty()) bad_value(key, raw.at(key), "a non-empty list");
  return out;
}

ModelParams resolve_params(const ExperimentConfig& cfg, int n) {
  if (cfg.has("epsilon") || cfg.has("c_q")) {
    WasepSpec spec;
    spec.epsilon = cfg.require_double("epsilon");
    spec.c_q = cfg.require_double("c_q");
    spec.u = cfg.get_double("u", 0.0);
    spec.v = cfg.get_double("v", 0.0);
    return wasep_params(spec, n);
  }
  const double q = cfg.get_double("q", 0.0);
  if (cfg.has("k") && cfg.has("v") && !cfg.has("u") && !cfg.has("alpha")) {
    const long k = cfg.get_int("k", 0);
    const double v = cfg.get_double("v", 0.0);
    if (k < 0) bad_value("k", cfg.get("k", ""), "a non-negative integer");
    if (!(v > 0.0)) bad_value("v", cfg.get("v", ""), "a positive number when u is derived from k");
    if (k > 0 && !(q > 0.0)) bad_value("q", cfg.get("q", ""), "q > 0 when k > 0");
    return params_from_uv(n, q, 1.0 / (v * std::pow(q, static_cast<double>(k))), v);
  }
  if (cfg.has("u") || cfg.has("v")) return params_from_uv(n, q, cfg.require_double("u"), cfg.require_double("v"));
  return make_params(n, q, cfg.require_double("alpha"), cfg.require_double("beta"));
}

std::optional<Interval> resolve_interval(const ExperimentConfig& cfg) {
  if (!cfg.has("interval")) return std::nullopt;
  const std::string s = cfg.get("interval", "");
  const auto colon = s.find(':');
  if (colon == std::string::npos) bad_value("interval", s, "a:b");
  Interval I;
  try {
    std::size_t u1 = 0, u2 = 0;
    const std::string a = s.substr(0, colon), b = s.substr(colon + 1);
    I.first = std::stoi(a, &u1);
    I.last = std::stoi(b, &u2);
    if (u1 != a.size() || u2 != b.size()) bad_value("interval", s, "a:b");
  } catch (const std::logic_error&) {
    bad_value("interval", s, "a:b with integers a <= b");
  }
  if (I.first < 1 || I.first > I.last) bad_value("interval", s, "1 <= a <= b");
  return I;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Open ASEP stationary distribution toolkit"};
  std::string command;
  app.add_option("command", command, "exact | motzkin | polymer | shock | mpa | sim | lpp | compare")->required();
  std::string config_path;
  app.add_option("--config", config_path, "INI-style key=value file");
  bool dry_run = false;
  app.add_flag("--dry-run", dry_run, "print the resolved config and exit");
  std::map<std::string, std::string> storage;
  std::map<std::string, CLI::Option*> options;
  for (const auto& key : known_keys()) options[key] = app.add_option("--" + key, storage[key]);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  ExperimentConfig cfg;
  try {
    std::map<std::string, std::string> file_values;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ValidationError("config: cannot open '" + config_path + "'");
      file_values = read_config_file(in, config_path);
    }
    std::map<std::string, std::string> flag_values;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) flag_values[key] = storage[key];
    }
    cfg = merge_config(parse_command(command), file_values, flag_values);
    cfg.dry_run = dry_run;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  for (const auto& w : cfg.warnings) err << "warning: " << w << '\n';

#ifdef _OPENMP
  long threads = 0;
  if (const char* env = std::getenv("ASEP_THREADS")) threads = std::atol(env);
  try {
    threads = cfg.get_int("threads", threads);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  if (threads > 0) omp_set_num_threads(static_cast<int>(threads));
#endif

  if (cfg.out.empty()) return run(cfg, out, err);
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) {
    err << "error: cannot open output '" << cfg.out << "'\n";
    return 1;
  }
  return run(cfg, file, err);
}

}  // namespace asep::cli
