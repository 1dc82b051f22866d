#include "asep/simulator.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace asep::sim {

Occupation to_occupation(Config c, int n) {
  Occupation eta(n);
  for (int i = 1; i <= n; ++i) eta[i - 1] = static_cast<std::uint8_t>(occupation(c, i));
  return eta;
}

Config to_config(const Occupation& eta) {
  if (eta.size() > 32) throw ValidationError("to_config: more than 32 sites");
  Config c = 0;
  for (std::size_t i = 0; i < eta.size(); ++i) {
    if (eta[i]) c |= Config{1} << i;
  }
  return c;
}

Trajectory::Trajectory(const ModelParams& p, Occupation init, std::uint64_t seed, std::uint64_t stream)
    : p_(p), rng_(seed, stream) {
  if (static_cast<int>(init.size()) != p.n) throw ValidationError("init: length must equal n");
  state_.config = std::move(init);
  state_.seed = seed;
  state_.stream = stream;
}

void Trajectory::advance_to(double t_end, std::vector<TraceEvent>* trace) {
  if (t_end < state_.time) throw ValidationError("t_end: must not precede the current time");
  Occupation& eta = state_.config;
  const int n = p_.n;
  // Move slots: 0 entry, 1 exit, 2+2i right hop i -> i+1, 3+2i left hop.
  std::vector<double> rates(2 + 2 * (n - 1));
  while (true) {
    double total = 0.0;
    rates[0] = eta[0] ? 0.0 : p_.alpha;
    rates[1] = eta[n - 1] ? p_.beta : 0.0;
    for (int i = 0; i + 1 < n; ++i) {
      rates[2 + 2 * i] = (eta[i] && !eta[i + 1]) ? 1.0 : 0.0;
      rates[3 + 2 * i] = (!eta[i] && eta[i + 1]) ? p_.q : 0.0;
    }
    for (double r : rates) total += r;
    const double dt = rng_.exponential(total);
    if (state_.time + dt > t_end) {
      state_.time = t_end;
      return;
    }
    state_.time += dt;
    double r = rng_.uniform() * total;
    std::size_t pick = 0;
    while (pick + 1 < rates.size() && (r >= rates[pick] || rates[pick] == 0.0)) {
      r -= rates[pick];
      ++pick;
    }
    while (rates[pick] == 0.0) --pick;  // roundoff at the top of the range
    ++state_.events;
    auto flip = [&](int idx, int value) {
      eta[idx] = static_cast<std::uint8_t>(value);
      if (trace) trace->push_back({state_.time, idx + 1, value});
    };
    if (pick == 0) {
      flip(0, 1);
    } else if (pick == 1) {
      flip(n - 1, 0);
    } else {
      const int i = static_cast<int>(pick - 2) / 2;
      const bool right = (pick % 2) == 0;
      flip(i, right ? 0 : 1);
      flip(i + 1, right ? 1 : 0);
    }
  }
}

SimState simulate(const ModelParams& p, const Occupation& init, double t_end, std::uint64_t seed,
                  std::uint64_t stream, std::vector<TraceEvent>* trace) {
  if (t_end < 0.0) throw ValidationError("t_end: must be >= 0");
  Trajectory traj(p, init, seed, stream);
  traj.advance_to(t_end, trace);
  return traj.state();
}

ConfigDist empirical_projected(const ModelParams& p, Interval interval, const EmpiricalOptions& opts) {
  if (opts.n_samples < 1) throw ValidationError("n_samples: must be >= 1");
  if (opts.replicas < 1) throw ValidationError("replicas: must be >= 1");
  if (interval.first < 1 || interval.first > interval.last || interval.last > p.n) {
    throw ValidationError("interval: need 1 <= a <= b <= n");
  }
  if (interval.size() > ConfigDist::kMaxLen) throw CapacityError("interval: too many sites for a dense law");
  const double gap = opts.gap < 0.0 ? static_cast<double>(p.n) : opts.gap;
  if (!(gap > 0.0)) throw ValidationError("gap: must be positive");
  if (opts.burn_in < 0.0) throw ValidationError("burn_in: must be >= 0");

  const int m = interval.size();
  const std::size_t cells = std::size_t{1} << m;
  const int R = opts.replicas;
  std::vector<std::vector<long>> counts(R, std::vector<long>(cells, 0));
#pragma omp parallel for schedule(dynamic, 1) if (opts.parallel)
  for (int r = 0; r < R; ++r) {
    const long share = opts.n_samples / R + (r < opts.n_samples % R ? 1 : 0);
    Trajectory traj(p, to_occupation(opts.init, p.n), opts.seed, static_cast<std::uint64_t>(r));
    traj.advance_to(opts.burn_in);
    for (long s = 0; s < share; ++s) {
      traj.advance_to(opts.burn_in + (s + 1) * gap);
      const Occupation& eta = traj.state().config;
      Config c = 0;
      for (int j = 0; j < m; ++j) {
        if (eta[interval.first - 1 + j]) c |= Config{1} << j;
      }
      ++counts[r][c];
    }
  }
  std::vector<double> w(cells, 0.0);
  for (const auto& row : counts) {
    for (std::size_t c = 0; c < cells; ++c) w[c] += static_cast<double>(row[c]);
  }
  return ConfigDist::from_weights(m, std::move(w));
}

CoupledTrace coupled_simulate(const ModelParams& lower, const ModelParams& upper, const Occupation& init_lower,
                              const Occupation& init_upper, double t_end, std::uint64_t seed,
                              std::uint64_t max_events, std::uint64_t stream) {
  if (lower.n != upper.n || lower.q != upper.q) throw ValidationError("coupled_simulate: n and q must agree");
  if (upper.alpha < lower.alpha || upper.beta > lower.beta) {
    throw ValidationError("coupled_simulate: need alpha' >= alpha and beta' <= beta for the upper system");
  }
  const int n = lower.n;
  if (static_cast<int>(init_lower.size()) != n || static_cast<int>(init_upper.size()) != n) {
    throw ValidationError("coupled_simulate: initial configurations must have length n");
  }
  CoupledTrace tr;
  tr.lower.config = init_lower;
  tr.upper.config = init_upper;
  tr.lower.seed = tr.upper.seed = seed;
  tr.lower.stream = tr.upper.stream = stream;
  Occupation& a = tr.lower.config;
  Occupation& b = tr.upper.config;
  auto ordered = [&] {
    for (int i = 0; i < n; ++i) {
      if (a[i] > b[i]) return false;
    }
    return true;
  };
  tr.ordered_at_start = ordered();

  // Clocks: shared right and left edge clocks, shared entry at alpha and exit
  // at beta', extra entry alpha'-alpha for the upper system and extra exit
  // beta-beta' for the lower system.
  const double entry_shared = lower.alpha, entry_extra = upper.alpha - lower.alpha;
  const double exit_shared = upper.beta, exit_extra = lower.beta - upper.beta;
  const double bulk = (n - 1) * (1.0 + lower.q);
  const double total = bulk + entry_shared + entry_extra + exit_shared + exit_extra;
  Philox rng(seed, stream);
  double t = 0.0;
  auto hop = [](Occupation& eta, int from, int to) {
    if (eta[from] && !eta[to]) {
      eta[from] = 0;
      eta[to] = 1;
    }
  };
  while (tr.events < max_events) {
    const double dt = rng.exponential(total);
    if (t + dt > t_end) {
      t = t_end;
      break;
    }
    t += dt;
    double r = rng.uniform() * total;
    if (r < bulk) {
      const double per = 1.0 + lower.q;
      int i = static_cast<int>(r / per);
      if (i > n - 2) i = n - 2;
      const bool right = r - i * per < 1.0;
      if (right) {
        hop(a, i, i + 1);
        hop(b, i, i + 1);
      } else {
        hop(a, i + 1, i);
        hop(b, i + 1, i);
      }
    } else if ((r -= bulk) < entry_shared) {
      a[0] = 1;
      b[0] = 1;
    } else if ((r -= entry_shared) < entry_extra) {
      b[0] = 1;
    } else if ((r -= entry_extra) < exit_shared) {
      a[n - 1] = 0;
      b[n - 1] = 0;
    } else {
      a[n - 1] = 0;
    }
    ++tr.events;
    if (tr.ordered_at_start && !ordered()) ++tr.order_violations;
  }
  tr.lower.time = tr.upper.time = t;
  tr.lower.events = tr.upper.events = tr.events;
  return tr;
}

void write_trace(std::ostream& os, const std::vector<TraceEvent>& trace) {
  os << "time,site,new_value\n";
  char buf[64];
  for (const auto& e : trace) {
    std::snprintf(buf, sizeof buf, "%.17g", e.time);
    os << buf << ',' << e.site << ',' << e.new_value << '\n';
  }
}

}  // namespace asep::sim
