#pragma once

#include <optional>
#include <vector>

#include "asep/core.hpp"

// Brute-force ground truth on the full 2^n state space.
namespace asep::exact {

inline constexpr int kMaxSites = 20;
inline constexpr int kMaxDenseSites = 10;
inline constexpr int kMaxSparseLuSites = 14;

/// Sparse rate matrix in CSR form. Off-diagonal rates only; the diagonal is
/// minus the exit rate of each state.
struct GeneratorMatrix {
  int n = 0;
  std::vector<std::size_t> row_start;  // size 2^n + 1
  std::vector<Config> target;
  std::vector<double> rate;
  std::vector<double> exit_rate;

  std::size_t states() const { return exit_rate.size(); }
};

GeneratorMatrix build_generator(const ModelParams& p);

/// Max over states of |(pi L)(s)|.
double balance_residual(const GeneratorMatrix& g, std::span<const double> pi);

enum class Solver { Auto, DenseLu, SparseLu, PowerIteration };

struct StationaryOptions {
  Solver solver = Solver::Auto;
  double power_tolerance = 1e-13;
  long max_iterations = 5'000'000;
  bool parallel = true;
};

ConfigDist stationary_exact(const ModelParams& p, const StationaryOptions& opts = {});

/// Uniformized power iteration. The serial variant is the reference for the
/// OpenMP kernel.
std::vector<double> power_iteration(const GeneratorMatrix& g, double lambda, double tol, long max_iterations,
                                    bool parallel);

/// Uniformization constant: n+1 when alpha, beta <= 1, else alpha + beta + n(1+q).
double uniformization_rate(const ModelParams& p);

/// mu(eta_i = 1, eta_{i+1} = 0) - q mu(eta_i = 0, eta_{i+1} = 1).
double current_exact(const ConfigDist& d, const ModelParams& p, int i);

/// (1-q) rho (1-rho) at the limiting bulk density; empty on phase boundaries.
std::optional<double> current_limit(const ModelParams& p);

}  // namespace asep::exact
