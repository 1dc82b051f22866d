#include "asep/shock_mpa.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asep::shock {

namespace {

void check_constraint(const ModelParams& p, int k) {
  if (k < 0) throw ValidationError("k: must be >= 0");
  const double r = std::abs(p.u * p.v * std::pow(p.q, k) - 1.0);
  if (!(r <= kConstraintTolerance)) {
    throw ValidationError("uv q^k = 1 violated: |uv q^k - 1| = " + std::to_string(r));
  }
}

double log_binomial(int n, int m) {
  return std::lgamma(n + 1.0) - std::lgamma(m + 1.0) - std::lgamma(n - m + 1.0);
}

// Z_j = 1 / (rho_j (1 - rho_j)), the per-site normalization of a segment.
std::vector<double> segment_norms(const ShockSystem& s) {
  std::vector<double> z(s.rho.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = 1.0 / (s.rho[i] * (1.0 - s.rho[i]));
  return z;
}

}  // namespace

ShockSystem bulk_densities(const ModelParams& p, int k) {
  check_constraint(p, k);
  if (k > 0 && !(p.u * p.v > 1.0)) throw ValidationError("bulk_densities: k > 0 requires uv > 1");
  ShockSystem s;
  s.k = k;
  s.q = p.q;
  s.rho_star = p.v >= p.u ? 0.0 : 1.0;
  double odds = 1.0 / p.u;
  s.rho.push_back(1.0 / (1.0 + p.u));
  for (int i = 1; i <= k; ++i) {
    odds /= p.q;
    s.rho.push_back(odds / (1.0 + odds));
  }
  const double end = p.v / (1.0 + p.v);
  if (std::abs(s.rho.back() - end) > kConstraintTolerance) {
    throw NumericalError("bulk_densities: rho_k = " + std::to_string(s.rho.back()) + " differs from v/(1+v)");
  }
  for (double r : s.rho) s.j.push_back((1.0 - p.q) * r * (1.0 - r));
  s.d.assign(k + 1, 1.0);
  for (int i = 1; i <= k; ++i) s.d[i] = s.j[i] / s.j[i - 1];
  return s;
}

ConfigDist shock_measure(const std::vector<int>& x, int y, const ShockSystem& s, int n) {
  const int m = static_cast<int>(x.size());
  if (y < 0 || y + m > s.k) throw ValidationError("shock_measure: need 0 <= y <= k - |x|");
  for (int i = 0; i < m; ++i) {
    if (x[i] < 1 || x[i] > n || (i > 0 && x[i] <= x[i - 1])) {
      throw ValidationError("shock_measure: positions must be strictly increasing in [1, n]");
    }
  }
  std::vector<double> density(n);
  int passed = 0;
  for (int site = 1; site <= n; ++site) {
    if (passed < m && x[passed] == site) {
      density[site - 1] = s.rho_star;
      ++passed;
    } else {
      density[site - 1] = s.rho[y + passed];
    }
  }
  std::vector<double> w(std::size_t{1} << n);
  for (Config c = 0; c < w.size(); ++c) {
    double pr = 1.0;
    for (int site = 1; site <= n; ++site) pr *= occupation(c, site) ? density[site - 1] : 1.0 - density[site - 1];
    w[c] = pr;
  }
  return ConfigDist::from_weights(n, std::move(w));
}

DualLaw dual_stationary(int n, int shock_count, const std::vector<double>& d) {
  if (shock_count < 0 || shock_count > n) throw ValidationError("shock_count: must lie in [0, n]");
  if (static_cast<int>(d.size()) != shock_count) throw ValidationError("d: need one ratio per shock");
  if (log_binomial(n, shock_count) > std::log(kMaxDualStates)) {
    throw CapacityError("dual_stationary: more than 1e7 shock configurations");
  }
  DualLaw law;
  std::vector<int> x(shock_count);
  for (int i = 0; i < shock_count; ++i) x[i] = i + 1;
  std::vector<double> logw;
  while (true) {
    double lw = 0.0;
    for (int i = 0; i < shock_count; ++i) lw += x[i] * std::log(d[i]);
    law.positions.push_back(x);
    logw.push_back(lw);
    int i = shock_count - 1;
    while (i >= 0 && x[i] == n - (shock_count - 1 - i)) --i;
    if (i < 0) break;
    ++x[i];
    for (int j = i + 1; j < shock_count; ++j) x[j] = x[j - 1] + 1;
  }
  const double top = *std::max_element(logw.begin(), logw.end());
  double total = 0.0;
  for (double lw : logw) total += std::exp(lw - top);
  for (double lw : logw) law.prob.push_back(std::exp(lw - top) / total);
  return law;
}

double leftmost_shock_tail(int n, int shock_count, const std::vector<double>& d, int c) {
  if (shock_count < 1 || shock_count > n) throw ValidationError("shock_count: must lie in [1, n]");
  if (static_cast<int>(d.size()) != shock_count) throw ValidationError("d: need one ratio per shock");
  if (c < 0) throw ValidationError("c: must be >= 0");
  // Each factor is d^{x - n} or d^{x - 1}, whichever keeps it <= 1.
  auto factor = [&](int i, int x) { return d[i] >= 1.0 ? std::pow(d[i], x - n) : std::pow(d[i], x - 1); };
  // g[x] = weight of shocks i..m-1 with shock i at x; suffix sums over x.
  std::vector<double> g(n + 2, 0.0), suffix(n + 2, 0.0);
  for (int i = shock_count - 1; i >= 0; --i) {
    std::vector<double> next(n + 2, 0.0);
    for (int x = 1; x <= n; ++x) {
      const double rest = i == shock_count - 1 ? 1.0 : suffix[x + 1];
      next[x] = factor(i, x) * rest;
    }
    g = next;
    std::fill(suffix.begin(), suffix.end(), 0.0);
    for (int x = n; x >= 1; --x) suffix[x] = suffix[x + 1] + g[x];
  }
  const int lo = std::max(1, n - c);
  return std::min(1.0, suffix[lo] / suffix[1]);
}

JumpRates dual_jump_rates(const ShockSystem& s, int i) {
  if (i < 1 || i > s.k) throw ValidationError("dual_jump_rates: shock index must lie in [1, k]");
  const double gap = s.rho[i] - s.rho[i - 1];
  if (!(gap > 0.0)) throw ValidationError("dual_jump_rates: degenerate density gap");
  return {s.j[i] / gap, s.j[i - 1] / gap};
}

MpaSystem mpa_matrices(const ModelParams& p, int k) {
  check_constraint(p, k);
  if (!(p.v > 0.0)) throw ValidationError("mpa_matrices: v must be positive");
  const int dim = k + 1;
  MpaSystem m;
  m.k = k;
  m.D = Eigen::MatrixXd::Zero(dim, dim);
  m.E = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const double vq = p.v * std::pow(p.q, i);
    m.D(i, i) = 1.0 + vq;
    m.E(i, i) = 1.0 + 1.0 / vq;
    if (i > 0) m.E(i, i - 1) = 1.0;
  }
  m.V = Eigen::VectorXd::Zero(dim);
  m.V(0) = 1.0;
  m.W = Eigen::RowVectorXd::Zero(dim);
  m.W(k) = 1.0;
  for (int i = k; i >= 1; --i) m.W(i - 1) = m.W(i) / (p.u * (1.0 - std::pow(p.q, k + 1 - i)));
  return m;
}

MpaReport verify_mpa_relations(const MpaSystem& m, const ModelParams& p) {
  MpaReport r;
  r.boundary_v = (p.beta * m.D * m.V - (1.0 - p.q) * m.V).cwiseAbs().maxCoeff();
  r.boundary_w = (p.alpha * m.W * m.E - (1.0 - p.q) * m.W).cwiseAbs().maxCoeff();
  const Eigen::MatrixXd comm = m.D * m.E - p.q * m.E * m.D;
  const Eigen::MatrixXd sum = m.D + m.E;
  const double res_one = (comm - sum).cwiseAbs().maxCoeff();
  const double res_q = (comm - (1.0 - p.q) * sum).cwiseAbs().maxCoeff();
  if (res_q <= res_one) {
    r.bulk_c = 1.0 - p.q;
    r.bulk_residual = res_q;
    r.other_residual = res_one;
  } else {
    r.bulk_c = 1.0;
    r.bulk_residual = res_one;
    r.other_residual = res_q;
  }
  return r;
}

ScaledValue mpa_amplitude(const MpaSystem& m, const std::vector<int>& eta) {
  Eigen::VectorXd x = m.V;
  double log_scale = 0.0;
  int since = 0;
  for (auto it = eta.rbegin(); it != eta.rend(); ++it) {
    x = (*it ? m.D : m.E) * x;
    if (++since == 32) {
      const double s = x.cwiseAbs().maxCoeff();
      if (s > 0.0) {
        x /= s;
        log_scale += std::log(s);
      }
      since = 0;
    }
  }
  return {m.W.dot(x), log_scale};
}

ConfigDist stationary_via_mpa(const ModelParams& p, int k) {
  if (p.n > 20) throw CapacityError("stationary_via_mpa: n must be <= 20");
  const MpaSystem m = mpa_matrices(p, k);
  const std::ptrdiff_t states = std::ptrdiff_t{1} << p.n;
  std::vector<double> w(static_cast<std::size_t>(states));
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < states; ++c) {
    Eigen::VectorXd x = m.V;
    for (int site = p.n; site >= 1; --site) x = (occupation(static_cast<Config>(c), site) ? m.D : m.E) * x;
    w[c] = m.W.dot(x);
  }
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) throw NumericalError("stationary_via_mpa: total mass is not positive");
  return ConfigDist::from_weights(p.n, std::move(w));
}

namespace {

// sum_x prod_i d_{y+i}^{x_i} mu^{x,y}(eta) with m shocks, by a left-to-right
// scan whose state is the number of shocks already passed.
double mixture_term(Config eta, int n, int m, int y, const ShockSystem& s) {
  std::vector<double> f(m + 1, 0.0), g(m + 1);
  f[0] = 1.0;
  const int star = static_cast<int>(s.rho_star);
  for (int site = 1; site <= n; ++site) {
    const int occ = occupation(eta, site);
    std::fill(g.begin(), g.end(), 0.0);
    for (int passed = 0; passed <= m; ++passed) {
      if (f[passed] == 0.0) continue;
      const double r = s.rho[y + passed];
      g[passed] += f[passed] * (occ ? r : 1.0 - r);
      if (passed < m && occ == star) g[passed + 1] += f[passed] * std::pow(s.d[y + passed + 1], site);
    }
    f.swap(g);
  }
  return f[m];
}

}  // namespace

MixtureResult shock_mixture(const ModelParams& p, int k) {
  if (p.n > 20) throw CapacityError("stationary_via_shock_mixture: n must be <= 20");
  const ShockSystem s = bulk_densities(p, k);
  const int n = p.n;
  const std::vector<double> z = segment_norms(s);
  MixtureResult out;
  out.low_density_form = s.rho_star == 1.0;

  // Coefficients follow from the finite representation: in the high-density
  // form the m-shock term carries W_m / prod_{j=k-m}^{k-1} Z_j. The
  // low-density form is the particle-hole and left-right reflection of the
  // high-density form with u and v exchanged.
  std::vector<double> coeff;
  if (!out.low_density_form) {
    const MpaSystem mpa = mpa_matrices(p, k);
    for (int m = 0; m <= std::min(k, n); ++m) {
      double c = mpa.W(m);
      for (int j = k - m; j <= k - 1; ++j) c /= z[j];
      coeff.push_back(c);
      out.terms.push_back({m, k - m, 0.0, 0.0});
    }
  } else {
    ModelParams r = p;
    std::swap(r.u, r.v);
    std::swap(r.alpha, r.beta);
    const MpaSystem mpa = mpa_matrices(r, k);
    for (int m = 0; m <= std::min(k, n); ++m) {
      double c = mpa.W(m);
      for (int j = k - m; j <= k - 1; ++j) c /= z[k - j];
      for (int i = 1; i <= m; ++i) c *= std::pow(s.d[i], -(n + 1));
      coeff.push_back(c);
      out.terms.push_back({m, 0, 0.0, 0.0});
    }
  }

  const std::size_t states = std::size_t{1} << n;
  std::vector<double> w(states, 0.0);
  for (std::size_t t = 0; t < out.terms.size(); ++t) {
    const int m = out.terms[t].n_shocks, y = out.terms[t].shift;
    double mass = 0.0;
    for (Config c = 0; c < states; ++c) {
      const double x = coeff[t] * mixture_term(c, n, m, y, s);
      w[c] += x;
      mass += x;
    }
    out.terms[t].mass = mass;
  }
  double total = 0.0;
  for (double x : w) total += x;
  if (!(total > 0.0)) throw NumericalError("stationary_via_shock_mixture: total mass is not positive");
  for (std::size_t t = 0; t < out.terms.size(); ++t) {
    out.terms[t].coefficient = coeff[t] / total;
    out.terms[t].mass /= total;
  }
  out.dist = ConfigDist::from_weights(n, std::move(w));
  return out;
}

ConfigDist stationary_via_shock_mixture(const ModelParams& p, int k) { return shock_mixture(p, k).dist; }

}  // namespace asep::shock
