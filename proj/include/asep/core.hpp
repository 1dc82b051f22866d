#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace asep {

// Error kinds. The CLI maps ValidationError to exit code 1 and the other two
// to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of the open ASEP on sites 1..n: right hops at rate 1, left hops
/// at rate q, injection at site 1 at rate alpha, ejection at site n at rate
/// beta. u and v are the derived boundary fugacities.
struct ModelParams {
  int n = 1;
  double q = 0.0;
  double alpha = 1.0;
  double beta = 1.0;
  double u = 0.0;
  double v = 0.0;
};

ModelParams make_params(int n, double q, double alpha, double beta);

/// Inverse parametrization: alpha = (1-q)/(1+u), beta = (1-q)/(1+v).
ModelParams params_from_uv(int n, double q, double u, double v);

/// Weakly asymmetric scaling q(N) = exp(-c_q N^-epsilon) with u, v held fixed.
struct WasepSpec {
  double epsilon = 0.5;
  double c_q = 1.0;
  double u = 0.0;
  double v = 0.0;
};

ModelParams wasep_params(const WasepSpec& spec, int n);

enum class DensityPhase { HighDensity, LowDensity, MaximalCurrent, Boundary };
enum class Region { Fan, Shock, ProductLine };

struct Phase {
  DensityPhase density_phase;
  Region region;
};

inline constexpr double kPhaseTolerance = 1e-12;

Phase classify_phase(const ModelParams& p);
std::string_view to_string(DensityPhase d);
std::string_view to_string(Region r);

/// Binary configuration on len <= 32 sites; bit i-1 holds site i.
using Config = std::uint32_t;

inline int occupation(Config c, int site) { return static_cast<int>((c >> (site - 1)) & 1U); }

/// Closed interval of sites [first, last], 1-based.
struct Interval {
  int first = 1;
  int last = 1;
  int size() const { return last - first + 1; }
};

/// Dense distribution over {0,1}^len. Normalized instances have non-negative
/// entries summing to one; the unnormalized form may carry signed weights.
class ConfigDist {
 public:
  static constexpr int kMaxLen = 24;

  ConfigDist() = default;
  /// Unnormalized weights, 2^len entries.
  ConfigDist(int len, std::vector<double> weights);

  /// Normalizes weights; throws NumericalError when the total mass is not
  /// positive or an entry is negative beyond roundoff.
  static ConfigDist from_weights(int len, std::vector<double> weights);
  static ConfigDist point_mass(int len, Config c);

  int len() const { return len_; }
  std::size_t size() const { return weights_.size(); }
  bool normalized() const { return normalized_; }
  double operator[](Config c) const { return weights_[c]; }
  std::span<const double> weights() const { return weights_; }

  ConfigDist normalize() const;

 private:
  int len_ = 0;
  std::vector<double> weights_;
  bool normalized_ = false;
};

double tv_distance(const ConfigDist& a, const ConfigDist& b);

/// Marginal on sites [interval.first, interval.last]; site `first` becomes
/// site 1 of the result.
ConfigDist project(const ConfigDist& d, Interval interval);

ConfigDist bernoulli_product(double rho, int len);

/// (z;q)_inf truncated once |z q^i| < tol. For tol < 1/2 the neglected tail
/// factor exp(r) satisfies |r| <= 2 tol / (1 - q).
double q_pochhammer(double z, double q, double tol = 1e-17);

/// Bulk density of the limiting Bernoulli product away from the boundaries;
/// empty on the coexistence and phase-boundary cases.
std::optional<double> liggett_limit_density(const ModelParams& p);

std::string config_string(Config c, int len);
Config parse_config(std::string_view s);

/// CSV with header `config,probability`; site 1 is the leftmost character.
void write_csv(std::ostream& os, const ConfigDist& d);
ConfigDist read_csv(std::istream& is);

}  // namespace asep
