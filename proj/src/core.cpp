#include "asep/core.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace asep {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ValidationError(what);
}

}  // namespace

ModelParams make_params(int n, double q, double alpha, double beta) {
  require(n >= 1, "n: must be >= 1");
  require(q >= 0.0 && q < 1.0, "q: must lie in [0,1)");
  require(alpha > 0.0 && std::isfinite(alpha), "alpha: must be positive");
  require(beta > 0.0 && std::isfinite(beta), "beta: must be positive");
  ModelParams p;
  p.n = n;
  p.q = q;
  p.alpha = alpha;
  p.beta = beta;
  p.u = (1.0 - q) / alpha - 1.0;
  p.v = (1.0 - q) / beta - 1.0;
  return p;
}

ModelParams params_from_uv(int n, double q, double u, double v) {
  require(u > -1.0, "u: must be > -1");
  require(v > -1.0, "v: must be > -1");
  require(q >= 0.0 && q < 1.0, "q: must lie in [0,1)");
  ModelParams p = make_params(n, q, (1.0 - q) / (1.0 + u), (1.0 - q) / (1.0 + v));
  // keep the requested fugacities bit-exact
  p.u = u;
  p.v = v;
  return p;
}

ModelParams wasep_params(const WasepSpec& spec, int n) {
  require(n >= 1, "n: must be >= 1");
  require(spec.epsilon > 0.0, "epsilon: must be positive");
  require(spec.c_q > 0.0, "c_q: must be positive");
  require(spec.u > -1.0, "u: must be > -1");
  require(spec.v > -1.0, "v: must be > -1");
  const double q = std::exp(-spec.c_q * std::pow(static_cast<double>(n), -spec.epsilon));
  return params_from_uv(n, q, spec.u, spec.v);
}

Phase classify_phase(const ModelParams& p) {
  const double tol = kPhaseTolerance;
  Phase ph{DensityPhase::Boundary, Region::ProductLine};
  if (p.v > std::max(p.u, 1.0) + tol) {
    ph.density_phase = DensityPhase::HighDensity;
  } else if (p.u > std::max(1.0, p.v) + tol) {
    ph.density_phase = DensityPhase::LowDensity;
  } else if (std::max(p.u, p.v) < 1.0 - tol) {
    ph.density_phase = DensityPhase::MaximalCurrent;
  }
  const double uv = p.u * p.v;
  if (uv < 1.0 - tol) {
    ph.region = Region::Fan;
  } else if (uv > 1.0 + tol) {
    ph.region = Region::Shock;
  }
  return ph;
}

std::string_view to_string(DensityPhase d) {
  switch (d) {
    case DensityPhase::HighDensity: return "HighDensity";
    case DensityPhase::LowDensity: return "LowDensity";
    case DensityPhase::MaximalCurrent: return "MaximalCurrent";
    case DensityPhase::Boundary: return "Boundary";
  }
  return "?";
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::Fan: return "Fan";
    case Region::Shock: return "Shock";
    case Region::ProductLine: return "ProductLine";
  }
  return "?";
}

ConfigDist::ConfigDist(int len, std::vector<double> weights) : len_(len), weights_(std::move(weights)) {
  require(len >= 0 && len <= kMaxLen, "len: must lie in [0," + std::to_string(kMaxLen) + "]");
  require(weights_.size() == (std::size_t{1} << len), "weights: expected 2^len entries");
}

ConfigDist ConfigDist::from_weights(int len, std::vector<double> weights) {
  return ConfigDist(len, std::move(weights)).normalize();
}

ConfigDist ConfigDist::point_mass(int len, Config c) {
  std::vector<double> w(std::size_t{1} << len, 0.0);
  require(c < w.size(), "config: out of range for len");
  w[c] = 1.0;
  ConfigDist d(len, std::move(w));
  d.normalized_ = true;
  return d;
}

ConfigDist ConfigDist::normalize() const {
  double total = 0.0;
  double scale = 0.0;
  for (double w : weights_) {
    total += w;
    scale = std::max(scale, std::abs(w));
  }
  if (!(total > 0.0)) {
    throw NumericalError("ConfigDist: total mass " + std::to_string(total) + " is not positive");
  }
  ConfigDist out = *this;
  for (double& w : out.weights_) {
    if (w < 0.0) {
      if (w < -1e-12 * scale) {
        throw NumericalError("ConfigDist: negative weight " + std::to_string(w) + " after summation");
      }
      w = 0.0;
    }
    w /= total;
  }
  out.normalized_ = true;
  return out;
}

double tv_distance(const ConfigDist& a, const ConfigDist& b) {
  if (a.len() != b.len()) throw ValidationError("tv_distance: length mismatch");
  require(a.normalized() && b.normalized(), "tv_distance: inputs must be normalized");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a.weights()[i] - b.weights()[i]);
  return std::min(1.0, 0.5 * s);
}

ConfigDist project(const ConfigDist& d, Interval interval) {
  if (interval.first < 1 || interval.first > interval.last || interval.last > d.len()) {
    throw ValidationError("interval: need 1 <= a <= b <= len");
  }
  const int m = interval.size();
  const Config mask = (Config{1} << m) - 1;
  std::vector<double> w(std::size_t{1} << m, 0.0);
  for (Config c = 0; c < d.size(); ++c) w[(c >> (interval.first - 1)) & mask] += d[c];
  ConfigDist out(m, std::move(w));
  return d.normalized() ? out.normalize() : out;
}

ConfigDist bernoulli_product(double rho, int len) {
  require(rho >= 0.0 && rho <= 1.0, "rho: must lie in [0,1]");
  std::vector<double> w(std::size_t{1} << len);
  for (Config c = 0; c < w.size(); ++c) {
    const int ones = std::popcount(c);
    w[c] = std::pow(rho, ones) * std::pow(1.0 - rho, len - ones);
  }
  return ConfigDist::from_weights(len, std::move(w));
}

double q_pochhammer(double z, double q, double tol) {
  if (!(q >= 0.0 && q < 1.0)) throw ValidationError("q_pochhammer: q must lie in [0,1)");
  double prod = 1.0;
  double term = z;
  while (std::abs(term) >= tol) {
    prod *= 1.0 - term;
    term *= q;
    if (term == 0.0) break;
  }
  return prod;
}

std::optional<double> liggett_limit_density(const ModelParams& p) {
  const double half = (1.0 - p.q) / 2.0;
  const double tol = kPhaseTolerance;
  if (p.alpha < std::min(p.beta, half) - tol) return p.alpha / (1.0 - p.q);
  if (p.beta < std::min(p.alpha, half) - tol) return 1.0 - p.beta / (1.0 - p.q);
  if (std::min(p.alpha, p.beta) > half + tol) return 0.5;
  return std::nullopt;
}

std::string config_string(Config c, int len) {
  std::string s(static_cast<std::size_t>(len), '0');
  for (int i = 1; i <= len; ++i) s[i - 1] = occupation(c, i) ? '1' : '0';
  return s;
}

Config parse_config(std::string_view s) {
  require(s.size() <= 32, "config: longer than 32 sites");
  Config c = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      c |= Config{1} << i;
    } else if (s[i] != '0') {
      throw ValidationError("config: expected a binary string, got '" + std::string(s) + "'");
    }
  }
  return c;
}

void write_csv(std::ostream& os, const ConfigDist& d) {
  os << "config,probability\n";
  char buf[64];
  for (Config c = 0; c < d.size(); ++c) {
    std::snprintf(buf, sizeof buf, "%.17g", d[c]);
    os << config_string(c, d.len()) << ',' << buf << '\n';
  }
}

ConfigDist read_csv(std::istream& is) {
  std::string line;
  std::vector<std::pair<Config, double>> rows;
  int len = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#' || line.rfind("config", 0) == 0) continue;
    const auto comma = line.find(',');
    require(comma != std::string::npos, "csv: missing comma in '" + line + "'");
    const std::string cfg = line.substr(0, comma);
    if (len < 0) len = static_cast<int>(cfg.size());
    require(static_cast<int>(cfg.size()) == len, "csv: inconsistent config length");
    rows.emplace_back(parse_config(cfg), std::stod(line.substr(comma + 1)));
  }
  require(len >= 0, "csv: no rows");
  std::vector<double> w(std::size_t{1} << len, 0.0);
  for (auto [c, p] : rows) w[c] = p;
  return ConfigDist::from_weights(len, std::move(w));
}

}  // namespace asep
