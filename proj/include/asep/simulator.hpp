#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "asep/core.hpp"
#include "asep/rng.hpp"

namespace asep::sim {

using Occupation = std::vector<std::uint8_t>;

Occupation to_occupation(Config c, int n);
Config to_config(const Occupation& eta);

struct SimState {
  Occupation config;
  double time = 0.0;
  std::uint64_t events = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
};

struct TraceEvent {
  double time;
  int site;
  int new_value;
};

/// Gillespie direct method up to t_end. Optional trace of site flips.
SimState simulate(const ModelParams& p, const Occupation& init, double t_end, std::uint64_t seed,
                  std::uint64_t stream = 0, std::vector<TraceEvent>* trace = nullptr);

/// A trajectory that can be advanced piecewise. An event drawn past the
/// target time is discarded; by memorylessness the law is unchanged.
class Trajectory {
 public:
  Trajectory(const ModelParams& p, Occupation init, std::uint64_t seed, std::uint64_t stream);
  void advance_to(double t_end, std::vector<TraceEvent>* trace = nullptr);
  const SimState& state() const { return state_; }

 private:
  ModelParams p_;
  SimState state_;
  Philox rng_;
};

struct EmpiricalOptions {
  long n_samples = 100000;
  double burn_in = 0.0;
  double gap = -1.0;  // -1: n time units
  std::uint64_t seed = 1;
  int replicas = 1;
  bool parallel = true;
  Config init = 0;
};

/// Empirical law of the projected configuration, sampled every `gap` time
/// units after burn-in. Samples are split across independent replicas keyed
/// by (seed, replica); the result does not depend on the thread count.
ConfigDist empirical_projected(const ModelParams& p, Interval interval, const EmpiricalOptions& opts);

struct CoupledTrace {
  SimState lower;
  SimState upper;
  std::uint64_t events = 0;
  std::uint64_t order_violations = 0;
  bool ordered_at_start = true;
};

/// Basic coupling of a lower system (alpha, beta) and an upper system
/// (alpha', beta') with alpha' >= alpha and beta' <= beta. Runs until t_end or
/// max_events clock rings, whichever comes first, and counts events after
/// which upper >= lower fails.
CoupledTrace coupled_simulate(const ModelParams& lower, const ModelParams& upper, const Occupation& init_lower,
                              const Occupation& init_upper, double t_end, std::uint64_t seed,
                              std::uint64_t max_events = UINT64_MAX, std::uint64_t stream = 0);

/// CSV trace with header time,site,new_value.
void write_trace(std::ostream& os, const std::vector<TraceEvent>& trace);

}  // namespace asep::sim
