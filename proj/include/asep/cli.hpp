#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "asep/core.hpp"

namespace asep::cli {

enum class Command { Exact, Motzkin, Polymer, Shock, Mpa, Sim, Lpp, Compare };

std::string_view to_string(Command c);
Command parse_command(std::string_view s);

enum class Format { Csv, Json };

/// Fully resolved run description. `raw` keeps the key=value pairs as given
/// so that reports can echo them.
struct ExperimentConfig {
  Command command = Command::Exact;
  std::map<std::string, std::string> raw;
  Format format = Format::Csv;
  std::string out;  // empty: stdout
  bool dry_run = false;
  std::vector<std::string> warnings;

  bool has(const std::string& key) const { return raw.count(key) != 0; }
  std::string get(const std::string& key, const std::string& fallback) const;
  long get_int(const std::string& key, long fallback) const;
  long require_int(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  std::vector<long> get_int_list(const std::string& key, const std::vector<long>& fallback) const;
};

/// Keys accepted in config files and as --key flags.
const std::vector<std::string>& known_keys();

/// Reads INI-style key=value lines; `#` starts a comment. Section headers
/// are ignored.
std::map<std::string, std::string> read_config_file(std::istream& is, const std::string& origin);

/// Builds a config from file values and flag values; flags win, and every
/// overridden file value is reported as a warning.
ExperimentConfig merge_config(Command command, const std::map<std::string, std::string>& file_values,
                              const std::map<std::string, std::string>& flag_values);

/// Model parameters for segment length n from (alpha, beta), (u, v), (q, v, k)
/// or a weakly asymmetric spec (epsilon, c_q, u, v).
ModelParams resolve_params(const ExperimentConfig& cfg, int n);

std::optional<Interval> resolve_interval(const ExperimentConfig& cfg);

/// Executes the command and writes the report. Returns the process exit code:
/// 0 success, 1 validation error, 2 numerical or capacity failure.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (command first) and runs. Used by the asep_cli binary.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

// Report helpers.
std::string version_line();
std::string format_double(double x);
void write_config_header(std::ostream& os, const ExperimentConfig& cfg);

}  // namespace asep::cli
