#include "asep/motzkin.hpp"

#include <cmath>
#include <string>

namespace asep::motzkin {

namespace mp = boost::multiprecision;

bool occupies(Step s) { return s == Step::North || s == Step::EastEmpty; }

std::vector<int> heights(const StepSequence& omega) {
  std::vector<int> h(omega.size() + 1, 0);
  for (std::size_t i = 0; i < omega.size(); ++i) {
    h[i + 1] = h[i] + (omega[i] == Step::North ? 1 : omega[i] == Step::South ? -1 : 0);
  }
  return h;
}

bool is_motzkin(const StepSequence& omega) {
  const auto h = heights(omega);
  for (int x : h) {
    if (x < 0) return false;
  }
  return h.back() == 0;
}

Config config_of(const StepSequence& omega) {
  if (omega.size() > 32) throw ValidationError("config_of: path longer than 32 steps");
  Config c = 0;
  for (std::size_t i = 0; i < omega.size(); ++i) {
    if (occupies(omega[i])) c |= Config{1} << i;
  }
  return c;
}

double step_weight(Step s, int h_base, const ModelParams& p) {
  if (h_base < 0) throw ValidationError("step_weight: negative height " + std::to_string(h_base));
  const double qh = std::pow(p.q, h_base);
  const double scale = 1.0 / (1.0 - p.q);
  switch (s) {
    case Step::North: return scale * (1.0 - qh * p.q);
    case Step::South: return scale * (1.0 - p.u * p.v * qh);
    case Step::EastFilled: return scale * (1.0 + p.u * qh);
    case Step::EastEmpty: return scale * (1.0 + p.v * qh);
  }
  return 0.0;
}

double total_weight(const StepSequence& omega, const ModelParams& p) {
  double w = 1.0;
  int h = 0;
  for (Step s : omega) {
    if (s == Step::South) --h;
    if (h < 0) throw ValidationError("total_weight: path drops below the axis");
    w *= step_weight(s, h, p);
    if (s == Step::North) ++h;
  }
  return w;
}

double basic_weight(Config eta, int len, const ModelParams& p) {
  const int H = len / 2;
  std::vector<double> f(H + 2, 0.0), g(H + 2, 0.0);
  f[0] = 1.0;
  for (int i = 1; i <= len; ++i) {
    std::fill(g.begin(), g.end(), 0.0);
    const bool occ = occupation(eta, i);
    const int top = std::min({i - 1, len - i + 1, H});
    for (int h = 0; h <= top; ++h) {
      if (f[h] == 0.0) continue;
      if (occ) {
        g[h + 1] += f[h] * step_weight(Step::North, h, p);
        g[h] += f[h] * step_weight(Step::EastEmpty, h, p);
      } else {
        if (h > 0) g[h - 1] += f[h] * step_weight(Step::South, h - 1, p);
        g[h] += f[h] * step_weight(Step::EastFilled, h, p);
      }
    }
    f.swap(g);
  }
  return f[0];
}

std::optional<int> finite_height_cap(const ModelParams& p) {
  const double uv = p.u * p.v;
  if (std::abs(uv - 1.0) <= 1e-10) return 0;
  if (p.q <= 0.0 || uv <= 1.0) return std::nullopt;
  const int k = static_cast<int>(std::lround(std::log(uv) / -std::log(p.q)));
  if (k >= 0 && std::abs(uv * std::pow(p.q, k) - 1.0) <= 1e-10) return k;
  return std::nullopt;
}

int resolve_height_cap(const ModelParams& p, int h_max) {
  const int need = (p.n + 1) / 2;
  const auto k = finite_height_cap(p);
  if (h_max < 0) return k ? std::min(*k, need) : need;
  if (h_max >= need || (k && h_max >= *k)) return h_max;
  throw ValidationError("h_max: " + std::to_string(h_max) + " is below ceil(n/2) = " + std::to_string(need) +
                        " and weights do not provably vanish above it");
}

ScaledValue partition_function(int n, const ModelParams& p) {
  if (n < 0) throw ValidationError("partition_function: n must be >= 0");
  if (n == 0) return {1.0, 0.0};
  ModelParams pn = p;
  pn.n = n;
  const int H = resolve_height_cap(pn, -1);
  const StepKernel<double> k = path_kernel<double>(pn, H);
  Column<double> f = initial_column<double>();
  for (int i = 1; i <= n; ++i) {
    f = step_forward(k, f, height_cap(PathMode::Constraint, n, i, H), SiteChoice::Any);
    f.rescale();
  }
  return {f.w[0], f.log_scale};
}

mp::cpp_int partition_count_exact(int n) {
  if (n < 0) throw ValidationError("partition_count_exact: n must be >= 0");
  const int H = n / 2;
  std::vector<mp::cpp_int> f(H + 2), g(H + 2);
  f[0] = 1;
  for (int i = 1; i <= n; ++i) {
    for (auto& x : g) x = 0;
    for (int h = 0; h <= std::min(i - 1, H); ++h) {
      if (f[h] == 0) continue;
      if (h + 1 <= H) g[h + 1] += f[h];
      if (h > 0) g[h - 1] += f[h];
      g[h] += 2 * f[h];
    }
    f.swap(g);
  }
  return f[0];
}

mp::cpp_int catalan(int m) {
  if (m < 0) throw ValidationError("catalan: m must be >= 0");
  mp::cpp_int c = 1;
  for (int i = 0; i < m; ++i) c = c * 2 * (2 * i + 1) / (i + 2);
  return c;
}

ConfigDist stationary_via_paths(const ModelParams& p, bool parallel) {
  if (p.n > 20) throw CapacityError("stationary_via_paths: n must be <= 20");
  const std::ptrdiff_t states = std::ptrdiff_t{1} << p.n;
  std::vector<double> w(static_cast<std::size_t>(states));
#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t c = 0; c < states; ++c) w[c] = basic_weight(static_cast<Config>(c), p.n, p);
  double z = 0.0;
  for (double x : w) z += x;
  if (!(z > 0.0)) throw NumericalError("stationary_via_paths: Z_N = " + std::to_string(z) + " has no positive mass");
  return ConfigDist::from_weights(p.n, std::move(w));
}

ConfigDist projected_stationary_transfer(const ModelParams& p, Interval interval, const TransferOptions& opts) {
  std::vector<double> law = projected_law<double>(p, interval, opts);
  return ConfigDist::from_weights(interval.size(), std::move(law));
}

double verify_basic_relations(const ModelParams& p, int n) {
  if (n > 12) throw CapacityError("verify_basic_relations: n must be <= 12");
  auto B = [&](Config c, int len) { return basic_weight(c, len, p); };
  auto rel = [](double a, double b) {
    const double m = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / m;
  };
  double worst = std::abs(B(0, 0) - 1.0);
  for (int L = 0; L + 1 <= n; ++L) {
    for (Config eta = 0; eta < (Config{1} << L); ++eta) {
      const double b = B(eta, L);
      worst = std::max(worst, rel(b, p.alpha * B(eta << 1, L + 1)));
      worst = std::max(worst, rel(b, p.beta * B(eta | (Config{1} << L), L + 1)));
    }
  }
  for (int L = 0; L + 2 <= n; ++L) {
    for (int left = 0; left <= L; ++left) {
      const int right = L - left;
      for (Config eta = 0; eta < (Config{1} << left); ++eta) {
        for (Config zeta = 0; zeta < (Config{1} << right); ++zeta) {
          const Config one = Config{1} << left;
          const double lhs = B(eta | (zeta << (left + 1)), L + 1) + B(eta | one | (zeta << (left + 1)), L + 1);
          const double a = B(eta | one | (zeta << (left + 2)), L + 2);
          const double c = B(eta | (one << 1) | (zeta << (left + 2)), L + 2);
          const double rhs = a - p.q * c;
          const double m = std::max({std::abs(lhs), std::abs(a), std::abs(c), 1e-300});
          worst = std::max(worst, std::abs(lhs - rhs) / m);
        }
      }
    }
  }
  return worst;
}

}  // namespace asep::motzkin
