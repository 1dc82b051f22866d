#pragma once

#include <vector>

#include "asep/core.hpp"
#include "asep/rng.hpp"
#include "asep/transfer.hpp"

namespace asep::polymer {

/// Potential of a step y in {-1, 0, 1}. For diagonal steps h is the lower
/// endpoint height, so a down step leaving the axis reads h = -1 and hits the
/// hard wall. Returns -infinity for h < 0 and for non-positive weights.
double potential_v(int h, int y, const ModelParams& p);

/// Transfer tables of the free or constraint polymer of length n. h_max < 0
/// selects the natural cap (ceil(n/2) constrained, n free).
TransferTables build_transfer_tables(int n, const ModelParams& p, PathMode mode, int h_max = -1);

struct PolymerSample {
  std::vector<int> heights;
  double log_weight = 0.0;
};

/// Exact draw from the polymer measure encoded by the tables.
PolymerSample sample_path(const TransferTables& t, Philox& rng);

std::vector<double> height_marginal(const TransferTables& t, int position);

/// P(S_i >= j).
double event_prob_a(const TransferTables& t, int i, int j);

/// P(tau_m > s) for s = 0..n, where tau_m = inf{s >= 1 : S_s = m}.
std::vector<double> return_time_survival(const TransferTables& t, int m);

/// E[min(tau_m, n)^k].
double return_time_moment(const TransferTables& t, int m, int k);
double return_time_moment(const ModelParams& p, int m, int k, int n, PathMode mode = PathMode::Constraint);

/// Law of tau_0 under the constraint measure: entry s is P(tau_0 = s), s = 1..n.
std::vector<double> excursion_law_estimate(const ModelParams& p, int n);

/// (1/n) log Z.
double free_energy(int n, const ModelParams& p, PathMode mode);

struct LazyStep {
  double down = 0.0;
  double stay = 0.0;
  double up = 0.0;
};

/// Transition probabilities of the lazy h-transformed walk from x.
LazyStep h_transform_step_probs(int x);

}  // namespace asep::polymer
