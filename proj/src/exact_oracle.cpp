#include "asep/exact_oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <string>

namespace asep::exact {

GeneratorMatrix build_generator(const ModelParams& p) {
  if (p.n > kMaxSites) {
    throw CapacityError("build_generator: n=" + std::to_string(p.n) + " exceeds " + std::to_string(kMaxSites));
  }
  const int n = p.n;
  const Config states = Config{1} << n;
  GeneratorMatrix g;
  g.n = n;
  g.row_start.reserve(states + 1);
  g.exit_rate.assign(states, 0.0);
  g.row_start.push_back(0);
  const Config last = Config{1} << (n - 1);
  for (Config s = 0; s < states; ++s) {
    auto add = [&](Config t, double r) {
      g.target.push_back(t);
      g.rate.push_back(r);
      g.exit_rate[s] += r;
    };
    if (!(s & 1U)) add(s | 1U, p.alpha);
    if (s & last) add(s & ~last, p.beta);
    for (int i = 0; i + 1 < n; ++i) {
      const Config here = Config{1} << i, next = here << 1;
      const bool a = s & here, b = s & next;
      if (a && !b) add(s ^ here ^ next, 1.0);
      if (!a && b && p.q > 0.0) add(s ^ here ^ next, p.q);
    }
    g.row_start.push_back(g.target.size());
  }
  return g;
}

double balance_residual(const GeneratorMatrix& g, std::span<const double> pi) {
  std::vector<double> flow(g.states(), 0.0);
  for (std::size_t s = 0; s < g.states(); ++s) {
    flow[s] -= pi[s] * g.exit_rate[s];
    for (std::size_t k = g.row_start[s]; k < g.row_start[s + 1]; ++k) flow[g.target[k]] += pi[s] * g.rate[k];
  }
  double r = 0.0;
  for (double f : flow) r = std::max(r, std::abs(f));
  return r;
}

double uniformization_rate(const ModelParams& p) {
  if (p.alpha <= 1.0 && p.beta <= 1.0) return p.n + 1.0;
  return p.alpha + p.beta + p.n * (1.0 + p.q);
}

namespace {

// Incoming-edge CSR so that the power step can be written as a gather.
struct Incoming {
  std::vector<std::size_t> start;
  std::vector<Config> source;
  std::vector<double> rate;
};

Incoming transpose(const GeneratorMatrix& g) {
  const std::size_t S = g.states();
  Incoming in;
  in.start.assign(S + 1, 0);
  for (Config t : g.target) ++in.start[t + 1];
  for (std::size_t s = 0; s < S; ++s) in.start[s + 1] += in.start[s];
  in.source.resize(g.target.size());
  in.rate.resize(g.target.size());
  std::vector<std::size_t> fill(in.start.begin(), in.start.end() - 1);
  for (std::size_t s = 0; s < S; ++s) {
    for (std::size_t k = g.row_start[s]; k < g.row_start[s + 1]; ++k) {
      const std::size_t slot = fill[g.target[k]]++;
      in.source[slot] = static_cast<Config>(s);
      in.rate[slot] = g.rate[k];
    }
  }
  return in;
}

std::vector<double> solve_dense(const GeneratorMatrix& g) {
  const auto S = static_cast<Eigen::Index>(g.states());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(S, S);
  for (Eigen::Index s = 0; s < S; ++s) {
    a(s, s) -= g.exit_rate[s];
    for (std::size_t k = g.row_start[s]; k < g.row_start[s + 1]; ++k) a(g.target[k], s) += g.rate[k];
  }
  // L^T pi = 0 with the last balance equation traded for the normalization.
  a.row(S - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(S);
  rhs(S - 1) = 1.0;
  Eigen::VectorXd pi = a.partialPivLu().solve(rhs);
  return {pi.data(), pi.data() + S};
}

std::vector<double> solve_sparse(const GeneratorMatrix& g) {
  const auto S = static_cast<Eigen::Index>(g.states());
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(g.target.size() + 2 * static_cast<std::size_t>(S));
  for (Eigen::Index s = 0; s < S; ++s) {
    if (s != S - 1) trip.emplace_back(s, s, -g.exit_rate[s]);
    for (std::size_t k = g.row_start[s]; k < g.row_start[s + 1]; ++k) {
      if (static_cast<Eigen::Index>(g.target[k]) != S - 1) trip.emplace_back(g.target[k], s, g.rate[k]);
    }
    trip.emplace_back(S - 1, s, 1.0);
  }
  Eigen::SparseMatrix<double> a(S, S);
  a.setFromTriplets(trip.begin(), trip.end());
  a.makeCompressed();
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw NumericalError("stationary_exact: sparse LU factorization failed");
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(S);
  rhs(S - 1) = 1.0;
  Eigen::VectorXd pi = lu.solve(rhs);
  return {pi.data(), pi.data() + S};
}

}  // namespace

std::vector<double> power_iteration(const GeneratorMatrix& g, double lambda, double tol, long max_iterations,
                                    bool parallel) {
  const Incoming in = transpose(g);
  const auto S = static_cast<std::ptrdiff_t>(g.states());
  std::vector<double> pi(static_cast<std::size_t>(S), 1.0 / static_cast<double>(S));
  std::vector<double> next(pi.size());
  for (long it = 0; it < max_iterations; ++it) {
    double delta = 0.0;
#pragma omp parallel for schedule(static) reduction(max : delta) if (parallel)
    for (std::ptrdiff_t t = 0; t < S; ++t) {
      double inflow = 0.0;
      for (std::size_t k = in.start[t]; k < in.start[t + 1]; ++k) inflow += pi[in.source[k]] * in.rate[k];
      const double x = pi[t] + (inflow - pi[t] * g.exit_rate[t]) / lambda;
      next[t] = x;
      delta = std::max(delta, std::abs(x - pi[t]));
    }
    pi.swap(next);
    if (delta < tol) {
      double total = 0.0;
      for (double x : pi) total += x;
      for (double& x : pi) x /= total;
      return pi;
    }
  }
  throw NumericalError("power_iteration: no convergence within " + std::to_string(max_iterations) + " iterations");
}

ConfigDist stationary_exact(const ModelParams& p, const StationaryOptions& opts) {
  const GeneratorMatrix g = build_generator(p);
  Solver solver = opts.solver;
  if (solver == Solver::Auto) {
    solver = p.n <= kMaxDenseSites      ? Solver::DenseLu
             : p.n <= kMaxSparseLuSites ? Solver::SparseLu
                                        : Solver::PowerIteration;
  }
  std::vector<double> pi;
  switch (solver) {
    case Solver::DenseLu: pi = solve_dense(g); break;
    case Solver::SparseLu: pi = solve_sparse(g); break;
    default:
      pi = power_iteration(g, uniformization_rate(p), opts.power_tolerance, opts.max_iterations, opts.parallel);
      break;
  }
  const double residual = balance_residual(g, pi);
  if (!(residual <= 1e-12)) {
    throw NumericalError("stationary_exact: balance residual " + std::to_string(residual) + " exceeds 1e-12");
  }
  return ConfigDist::from_weights(p.n, std::move(pi));
}

double current_exact(const ConfigDist& d, const ModelParams& p, int i) {
  if (i < 1 || i >= d.len()) throw ValidationError("current_exact: site i must lie in [1, n-1]");
  double forward = 0.0, backward = 0.0;
  for (Config c = 0; c < d.size(); ++c) {
    const int a = occupation(c, i), b = occupation(c, i + 1);
    if (a && !b) forward += d[c];
    if (!a && b) backward += d[c];
  }
  return forward - p.q * backward;
}

std::optional<double> current_limit(const ModelParams& p) {
  const auto rho = liggett_limit_density(p);
  if (!rho) return std::nullopt;
  return (1.0 - p.q) * *rho * (1.0 - *rho);
}

}  // namespace asep::exact
