#pragma once

#include <Eigen/Dense>
#include <vector>

#include "asep/core.hpp"
#include "asep/transfer.hpp"

namespace asep::shock {

inline constexpr double kConstraintTolerance = 1e-10;

/// Bulk densities rho_0..rho_k of the uv q^k = 1 family, with currents j_i
/// and ratios d_i = j_i / j_{i-1} (d[0] is unused and set to 1). rho_star is
/// the density carried by a shock site: 0 in the high-density form, 1 in the
/// low-density form.
struct ShockSystem {
  int k = 0;
  double q = 0.0;
  std::vector<double> rho;
  double rho_star = 0.0;
  std::vector<double> j;
  std::vector<double> d;
};

/// Uses rho_star = 0 when v >= u and rho_star = 1 otherwise.
ShockSystem bulk_densities(const ModelParams& p, int k);

/// Product measure with Ber(rho_star) at the shock sites x (1-based, strictly
/// increasing) and Ber(rho_{i+y}) strictly between x_i and x_{i+1}.
ConfigDist shock_measure(const std::vector<int>& x, int y, const ShockSystem& s, int n);

struct DualLaw {
  std::vector<std::vector<int>> positions;
  std::vector<double> prob;
};

inline constexpr double kMaxDualStates = 1e7;

/// mu*(x) proportional to prod_i d_i^{x_i} over ordered positions in [1, n].
/// d holds one ratio per shock.
DualLaw dual_stationary(int n, int shock_count, const std::vector<double>& d);

/// P(x_1 >= n - c) under mu*, without enumerating configurations.
double leftmost_shock_tail(int n, int shock_count, const std::vector<double>& d, int c);

struct JumpRates {
  double right = 0.0;
  double left = 0.0;
};

/// Rates of shock i in [1, k].
JumpRates dual_jump_rates(const ShockSystem& s, int i);

struct MpaSystem {
  int k = 0;
  Eigen::MatrixXd D, E;
  Eigen::RowVectorXd W;
  Eigen::VectorXd V;
};

MpaSystem mpa_matrices(const ModelParams& p, int k);

struct MpaReport {
  double boundary_v = 0.0;  // |beta D V - (1-q) V|_inf
  double boundary_w = 0.0;  // |alpha W E - (1-q) W|_inf
  double bulk_c = 0.0;      // the scaling in DE - qED = c (D + E) that fits best
  double bulk_residual = 0.0;
  double other_residual = 0.0;  // residual for the other candidate scaling
};

MpaReport verify_mpa_relations(const MpaSystem& m, const ModelParams& p);

/// <W| prod_i (D eta_i + E (1 - eta_i)) |V>, rescaled every 32 sites.
ScaledValue mpa_amplitude(const MpaSystem& m, const std::vector<int>& eta);

ConfigDist stationary_via_mpa(const ModelParams& p, int k);

struct MixtureTerm {
  int n_shocks = 0;
  int shift = 0;             // y: the leftmost bulk density is rho_y
  double coefficient = 0.0;  // multiplies sum_x prod d^{x_i} mu^{x,y}
  double mass = 0.0;         // total probability carried by the term
};

struct MixtureResult {
  ConfigDist dist;
  bool low_density_form = false;
  std::vector<MixtureTerm> terms;
};

MixtureResult shock_mixture(const ModelParams& p, int k);

ConfigDist stationary_via_shock_mixture(const ModelParams& p, int k);

}  // namespace asep::shock
