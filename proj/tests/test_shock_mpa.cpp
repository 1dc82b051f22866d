#include <doctest.h>

#include <cmath>
#include <map>

#include "asep/exact_oracle.hpp"
#include "asep/shock_mpa.hpp"
#include "oracle.hpp"

using namespace asep;
using namespace asep::shock;

namespace {

// params with uv q^k = 1 from (q, v, k)
ModelParams family(int n, double q, double v, int k) { return params_from_uv(n, q, 1.0 / (v * std::pow(q, k)), v); }

double max_abs_diff(const ConfigDist& a, const std::vector<double>& b) {
  double m = 0.0;
  for (Config c = 0; c < a.size(); ++c) m = std::max(m, std::abs(a[c] - b[c]));
  return m;
}

}  // namespace

TEST_CASE("bulk densities") {
  auto s = bulk_densities(params_from_uv(4, 0.5, 2.0, 1.0), 1);
  REQUIRE(s.rho.size() == 2);
  CHECK(s.rho[0] == doctest::Approx(1.0 / 3.0));
  CHECK(s.rho[1] == doctest::Approx(0.5));
  CHECK(s.j[0] == doctest::Approx(1.0 / 9.0));
  CHECK(s.j[1] == doctest::Approx(1.0 / 8.0));
  CHECK(s.d[1] == doctest::Approx(9.0 / 8.0));
  CHECK(s.rho_star == 1.0);

  s = bulk_densities(params_from_uv(4, 0.3, 1.0, 1.0), 0);
  REQUIRE(s.rho.size() == 1);
  CHECK(s.rho[0] == doctest::Approx(0.5));

  s = bulk_densities(params_from_uv(4, 0.5, 4.0, 1.0), 2);
  REQUIRE(s.rho.size() == 3);
  CHECK(s.rho[0] == doctest::Approx(0.2));
  CHECK(s.rho[1] == doctest::Approx(1.0 / 3.0));
  CHECK(s.rho[2] == doctest::Approx(0.5));

  s = bulk_densities(params_from_uv(4, 0.5, 1.0, 4.0), 2);
  CHECK(s.rho_star == 0.0);
  CHECK(s.rho.back() == doctest::Approx(0.8));

  CHECK_THROWS_AS(bulk_densities(params_from_uv(4, 0.5, 2.0, 1.5), 1), ValidationError);
}

TEST_CASE("odds recursion reaches v/(1+v)") {
  for (double q : {0.2, 0.5, 0.8}) {
    for (double v : {0.4, 1.0, 3.0}) {
      for (int k = 0; k <= 4; ++k) {
        const auto p = family(5, q, v, k);
        if (k > 0 && p.u * p.v <= 1.0) continue;
        const auto s = bulk_densities(p, k);
        CHECK(std::abs(s.rho.back() - v / (1 + v)) < 1e-10);
      }
    }
  }
}

TEST_CASE("shock measures") {
  const auto s = bulk_densities(params_from_uv(4, 0.5, 4.0, 1.0), 2);
  const auto flat = shock_measure({}, 1, s, 4);
  CHECK(tv_distance(flat, bernoulli_product(1.0 / 3.0, 4)) < 1e-15);
  const auto m = shock_measure({2}, 0, s, 4);
  CHECK(project(m, {1, 1})[1] == doctest::Approx(0.2));
  CHECK(project(m, {2, 2})[1] == doctest::Approx(1.0));
  CHECK(project(m, {3, 3})[1] == doctest::Approx(1.0 / 3.0));
  CHECK_THROWS_AS(shock_measure({3, 2}, 0, s, 4), ValidationError);
  CHECK_THROWS_AS(shock_measure({1}, 2, s, 4), ValidationError);
}

TEST_CASE("dual stationary law") {
  auto law = dual_stationary(3, 1, {2.0});
  REQUIRE(law.prob.size() == 3);
  CHECK(law.prob[0] == doctest::Approx(1.0 / 7.0));
  CHECK(law.prob[1] == doctest::Approx(2.0 / 7.0));
  CHECK(law.prob[2] == doctest::Approx(4.0 / 7.0));

  law = dual_stationary(5, 1, {1.0});
  for (double pr : law.prob) CHECK(pr == doctest::Approx(0.2));

  law = dual_stationary(4, 2, {1.0, 1.0});
  CHECK(law.prob.size() == 6);
  for (double pr : law.prob) CHECK(pr == doctest::Approx(1.0 / 6.0));

  CHECK_THROWS_AS(dual_stationary(200, 8, std::vector<double>(8, 1.0)), CapacityError);
}

TEST_CASE("dual law is in detailed balance with the shock rates") {
  const auto s = bulk_densities(params_from_uv(5, 0.5, 4.0, 1.0), 2);
  const int n = 6;
  const auto law = dual_stationary(n, 2, {s.d[1], s.d[2]});
  std::map<std::vector<int>, double> pr;
  for (std::size_t i = 0; i < law.prob.size(); ++i) pr[law.positions[i]] = law.prob[i];
  int pairs = 0;
  for (const auto& [x, px] : pr) {
    for (int i = 0; i < 2; ++i) {
      auto y = x;
      ++y[i];
      if (!pr.count(y)) continue;
      const auto r = dual_jump_rates(s, i + 1);
      CHECK(px * r.right == doctest::Approx(pr[y] * r.left).epsilon(1e-12));
      ++pairs;
    }
  }
  CHECK(pairs > 0);
}

TEST_CASE("jump rates") {
  const auto s = bulk_densities(params_from_uv(4, 0.5, 2.0, 1.0), 1);
  const auto r = dual_jump_rates(s, 1);
  CHECK(r.right == doctest::Approx(0.75));
  CHECK(r.left == doctest::Approx(2.0 / 3.0));
  CHECK(r.right / r.left == doctest::Approx(s.d[1]));
  CHECK_THROWS_AS(dual_jump_rates(s, 2), ValidationError);
}

TEST_CASE("leftmost shock tail") {
  CHECK(leftmost_shock_tail(3, 1, {2.0}, 0) == doctest::Approx(4.0 / 7.0));
  CHECK(leftmost_shock_tail(9, 2, {1.3, 1.1}, 8) == doctest::Approx(1.0));
  // against enumeration of the dual law
  for (int n : {5, 8, 12}) {
    for (int c : {0, 2, 4}) {
      const std::vector<double> d{1.4, 1.2};
      const auto law = dual_stationary(n, 2, d);
      double ref = 0.0;
      for (std::size_t i = 0; i < law.prob.size(); ++i) {
        if (law.positions[i][0] >= n - c) ref += law.prob[i];
      }
      CHECK(leftmost_shock_tail(n, 2, d, c) == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("leftmost shock tail decreases toward its limit") {
  // one shock: P(x >= n - c) = (1 - d^{-(c+1)}) / (1 - d^{-n}) for n > c
  const double d = 9.0 / 8.0;
  const int c = 25;
  double prev = 1.0;
  for (int n : {27, 40, 80, 160}) {
    const double t = leftmost_shock_tail(n, 1, {d}, c);
    CHECK(t == doctest::Approx((1 - std::pow(d, -(c + 1))) / (1 - std::pow(d, -n))));
    CHECK(t <= prev);
    prev = t;
  }
}

TEST_CASE("finite matrix representation") {
  const auto p = params_from_uv(1, 0.5, 2.0, 1.0);
  const auto m = mpa_matrices(p, 1);
  CHECK(m.D(0, 0) == doctest::Approx(2.0));
  CHECK(m.D(1, 1) == doctest::Approx(1.5));
  CHECK(m.D(0, 1) == 0.0);
  CHECK(m.E(0, 0) == doctest::Approx(2.0));
  CHECK(m.E(1, 1) == doctest::Approx(3.0));
  CHECK(m.E(1, 0) == doctest::Approx(1.0));
  CHECK(m.E(0, 1) == 0.0);
  CHECK(m.V(0) == 1.0);
  CHECK(m.V(1) == 0.0);
  CHECK(m.W(0) == doctest::Approx(1.0));
  CHECK(m.W(1) == doctest::Approx(1.0));
  CHECK(p.alpha == doctest::Approx(1.0 / 6.0));
  CHECK(p.beta == doctest::Approx(0.25));

  const auto r = verify_mpa_relations(m, p);
  CHECK(r.boundary_v <= 1e-12);
  CHECK(r.boundary_w <= 1e-12);
  CHECK(r.bulk_c == doctest::Approx(0.5));
  CHECK(r.bulk_residual <= 1e-12);
  CHECK(r.other_residual > 1e-3);

  const auto m0 = mpa_matrices(params_from_uv(1, 0.3, 1.0 / 0.7, 0.7), 0);
  CHECK(m0.D.rows() == 1);
  CHECK(m0.D(0, 0) == doctest::Approx(1.7));
  CHECK(m0.E(0, 0) == doctest::Approx(1.0 + 1.0 / 0.7));
  const auto r0 = verify_mpa_relations(m0, params_from_uv(1, 0.3, 1.0 / 0.7, 0.7));
  CHECK(r0.boundary_v <= 1e-12);
  CHECK(r0.boundary_w <= 1e-12);
  CHECK(r0.bulk_residual <= 1e-12);

  CHECK_THROWS_AS(mpa_matrices(params_from_uv(1, 0.5, 2.0, 1.1), 1), ValidationError);
}

TEST_CASE("one-site laws") {
  const auto p = params_from_uv(1, 0.5, 2.0, 1.0);
  CHECK(stationary_via_mpa(p, 1)[1] == doctest::Approx(0.4));
  CHECK(stationary_via_shock_mixture(p, 1)[1] == doctest::Approx(0.4));
  const auto p0 = params_from_uv(1, 0.3, 2.0, 0.5);
  CHECK(stationary_via_mpa(p0, 0)[1] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("mpa and mixture match the oracle") {
  for (int k = 0; k <= 2; ++k) {
    for (double q : {0.3, 0.6}) {
      for (double v : {0.5, 1.0, 3.0}) {
        for (int n = 1; n <= 6; ++n) {
          const auto p = family(n, q, v, k);
          if (k > 0 && p.u * p.v <= 1.0) continue;
          const auto ref = oracle::stationary(p);
          CHECK(max_abs_diff(stationary_via_mpa(p, k), ref) < 1e-10);
          CHECK(max_abs_diff(stationary_via_shock_mixture(p, k), ref) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("mixture structure") {
  const auto p0 = params_from_uv(5, 0.4, 2.0, 0.5);
  const auto r0 = shock_mixture(p0, 0);
  CHECK(r0.terms.size() == 1);
  CHECK(tv_distance(r0.dist, bernoulli_product(1.0 / 3.0, 5)) < 1e-12);

  const auto lo = shock_mixture(family(6, 0.5, 1.0, 2), 2);
  CHECK(lo.low_density_form);
  const auto hi = shock_mixture(params_from_uv(6, 0.5, 1.0, 4.0), 2);
  CHECK_FALSE(hi.low_density_form);
  for (const auto* r : {&lo, &hi}) {
    CHECK(r->terms.size() == 3);
    double mass = 0.0;
    for (const auto& t : r->terms) mass += t.mass;
    CHECK(mass == doctest::Approx(1.0));
  }
}

TEST_CASE("amplitudes survive long words") {
  const auto m = mpa_matrices(family(1, 0.5, 1.0, 2), 2);
  std::vector<int> eta(300);
  for (std::size_t i = 0; i < eta.size(); ++i) eta[i] = (i * 7) % 3 == 0;
  const auto a = mpa_amplitude(m, eta);
  CHECK(a.mantissa > 0.0);
  CHECK(std::isfinite(a.log()));
}

TEST_CASE("exact marginals are sandwiched under ordered exit rates") {
  const double q = 0.5, u = 4.0;
  const int n = 8;
  const auto mid = exact::stationary_exact(params_from_uv(n, q, u, 1.0));  // uv q^2 = 1
  const auto slow = exact::stationary_exact(params_from_uv(n, q, u, 1.5));  // smaller beta
  const auto fast = exact::stationary_exact(params_from_uv(n, q, u, 0.6));  // larger beta
  for (int s = 1; s <= n; ++s) {
    const double a = project(slow, {s, s})[1], b = project(mid, {s, s})[1], c = project(fast, {s, s})[1];
    CHECK(a >= b - 1e-14);
    CHECK(b >= c - 1e-14);
  }
}
