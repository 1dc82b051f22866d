#include "asep/polymer.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace asep::polymer {

double potential_v(int h, int y, const ModelParams& p) {
  if (y < -1 || y > 1) throw ValidationError("potential_v: step must be -1, 0 or 1");
  const double ninf = -std::numeric_limits<double>::infinity();
  if (h < 0) return ninf;
  const double qh = std::pow(p.q, h);
  const double w = y == 0 ? 2.0 + (p.u + p.v) * qh : std::sqrt((1.0 - qh * p.q) * (1.0 - p.u * p.v * qh));
  return w > 0.0 ? std::log(w) : ninf;
}

TransferTables build_transfer_tables(int n, const ModelParams& p, PathMode mode, int h_max) {
  if (n < 0) throw ValidationError("n: must be >= 0");
  if (!(p.u * p.v < 1.0)) {
    throw ValidationError("polymer: uv >= 1 is unsupported (weights are not positive outside the fan region)");
  }
  const int need = mode == PathMode::Constraint ? (n + 1) / 2 : n;
  if (h_max < 0) {
    h_max = need;
  } else if (h_max < need) {
    throw ValidationError("h_max: " + std::to_string(h_max) + " truncates reachable heights (need " +
                          std::to_string(need) + ")");
  }
  return TransferTables(polymer_kernel<double>(p, h_max), n, mode);
}

PolymerSample sample_path(const TransferTables& t, Philox& rng) {
  const StepKernel<double>& k = t.kernel();
  PolymerSample s;
  s.heights.assign(t.n() + 1, 0);
  int h = 0;
  for (int i = 0; i < t.n(); ++i) {
    const Column<double>& b = t.backward(i + 1);
    const int cap = b.cap();
    double w[3] = {0.0, 0.0, 0.0};  // down, flat, up
    if (h >= 1 && h - 1 <= cap) w[0] = k.down[h - 1] * b.w[h - 1];
    if (h <= cap) w[1] = k.flat(h) * b.w[h];
    if (h + 1 <= cap && h + 1 <= k.h_max) w[2] = k.up[h] * b.w[h + 1];
    const double total = w[0] + w[1] + w[2];
    double r = rng.uniform() * total;
    int pick = 2;
    for (int j = 0; j < 2; ++j) {
      if (r < w[j]) {
        pick = j;
        break;
      }
      r -= w[j];
    }
    while (w[pick] <= 0.0) --pick;  // guard against r landing on the total
    const double step = pick == 0 ? k.down[h - 1] : pick == 1 ? k.flat(h) : k.up[h];
    s.log_weight += std::log(step);
    h += pick - 1;
    s.heights[i + 1] = h;
  }
  return s;
}

std::vector<double> height_marginal(const TransferTables& t, int position) {
  if (position < 0 || position > t.n()) throw ValidationError("position: must lie in [0, n]");
  return t.height_marginal(position);
}

double event_prob_a(const TransferTables& t, int i, int j) {
  if (j < 0) throw ValidationError("j: must be >= 0");
  const auto m = height_marginal(t, i);
  double s = 0.0;
  for (int h = j; h < static_cast<int>(m.size()); ++h) s += m[h];
  return std::min(1.0, s);
}

std::vector<double> return_time_survival(const TransferTables& t, int m) {
  if (m < 0) throw ValidationError("m: must be >= 0");
  const int n = t.n();
  const double log_z = t.log_partition();
  std::vector<double> surv(n + 1, 0.0);
  surv[0] = 1.0;
  Column<double> g = initial_column<double>();
  for (int s = 1; s <= n; ++s) {
    g = step_forward(t.kernel(), g, t.forward(s).cap(), SiteChoice::Any);
    if (m <= g.cap()) g.w[m] = 0.0;
    g.rescale();
    const Column<double>& b = t.backward(s);
    double acc = 0.0;
    for (int h = 0; h <= std::min(g.cap(), b.cap()); ++h) acc += g.w[h] * b.w[h];
    surv[s] = acc > 0.0 ? std::min(1.0, std::exp(std::log(acc) + g.log_scale + b.log_scale - log_z)) : 0.0;
  }
  return surv;
}

double return_time_moment(const TransferTables& t, int m, int k) {
  if (k < 1 || k > 4) throw ValidationError("k: must lie in [1, 4]");
  const auto surv = return_time_survival(t, m);
  // E[min(tau, n)^k] = sum_{s<n} ((s+1)^k - s^k) P(tau > s)
  double e = 0.0;
  for (int s = 0; s < t.n(); ++s) e += (std::pow(s + 1.0, k) - std::pow(s, k)) * surv[s];
  return e;
}

double return_time_moment(const ModelParams& p, int m, int k, int n, PathMode mode) {
  return return_time_moment(build_transfer_tables(n, p, mode), m, k);
}

std::vector<double> excursion_law_estimate(const ModelParams& p, int n) {
  const auto surv = return_time_survival(build_transfer_tables(n, p, PathMode::Constraint), 0);
  std::vector<double> law(n + 1, 0.0);
  for (int s = 1; s <= n; ++s) law[s] = std::max(0.0, surv[s - 1] - surv[s]);
  return law;
}

double free_energy(int n, const ModelParams& p, PathMode mode) {
  if (n < 1) throw ValidationError("n: must be >= 1");
  return build_transfer_tables(n, p, mode).log_partition() / n;
}

LazyStep h_transform_step_probs(int x) {
  if (x < 0) throw ValidationError("x: must be >= 0");
  const double d = 4.0 * (x + 1.0);
  return {x / d, 0.5, (x + 2.0) / d};
}

}  // namespace asep::polymer
