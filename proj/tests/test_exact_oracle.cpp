#include <doctest.h>

#include <cmath>
#include <map>

#include "asep/exact_oracle.hpp"
#include "oracle.hpp"

using namespace asep;

namespace {

std::map<std::pair<Config, Config>, double> transitions(const exact::GeneratorMatrix& g) {
  std::map<std::pair<Config, Config>, double> out;
  for (Config s = 0; s < g.states(); ++s) {
    for (std::size_t e = g.row_start[s]; e < g.row_start[s + 1]; ++e) out[{s, g.target[e]}] += g.rate[e];
  }
  return out;
}

double max_abs_diff(const ConfigDist& a, const std::vector<double>& b) {
  double m = 0.0;
  for (Config c = 0; c < a.size(); ++c) m = std::max(m, std::abs(a[c] - b[c]));
  return m;
}

}  // namespace

TEST_CASE("generator for one site") {
  const auto g = exact::build_generator(make_params(1, 0.0, 0.3, 0.7));
  const auto t = transitions(g);
  CHECK(t.size() == 2);
  CHECK(t.at({0, 1}) == doctest::Approx(0.3));
  CHECK(t.at({1, 0}) == doctest::Approx(0.7));
}

TEST_CASE("generator for two sites") {
  const auto t = transitions(exact::build_generator(make_params(2, 0.0, 1.0, 1.0)));
  const auto c = [](const char* s) { return parse_config(s); };
  CHECK(t.size() == 5);
  CHECK(t.at({c("00"), c("10")}) == 1.0);
  CHECK(t.at({c("10"), c("01")}) == 1.0);
  CHECK(t.at({c("01"), c("00")}) == 1.0);
  CHECK(t.at({c("01"), c("11")}) == 1.0);
  CHECK(t.at({c("11"), c("10")}) == 1.0);

  const auto t2 = transitions(exact::build_generator(make_params(2, 0.5, 1.0, 1.0)));
  CHECK(t2.size() == 6);
  CHECK(t2.at({c("01"), c("10")}) == 0.5);
}

TEST_CASE("generator rows and diagonal") {
  const auto p = make_params(7, 0.4, 0.6, 0.9);
  const auto g = exact::build_generator(p);
  const auto Q = oracle::generator(p);
  for (Config s = 0; s < g.states(); ++s) {
    CHECK(g.row_start[s + 1] - g.row_start[s] <= std::size_t(p.n + 1));
    CHECK(g.exit_rate[s] == doctest::Approx(static_cast<double>(-Q[s][s])));
  }
  CHECK_THROWS_AS(exact::build_generator(make_params(21, 0.0, 1.0, 1.0)), CapacityError);
}

TEST_CASE("two-state and four-state laws") {
  const auto p1 = make_params(1, 0.2, 0.3, 0.5);
  CHECK(exact::stationary_exact(p1)[1] == doctest::Approx(0.3 / 0.8));
  const auto mu = exact::stationary_exact(make_params(2, 0.0, 1.0, 1.0));
  CHECK(mu[parse_config("00")] == doctest::Approx(0.2));
  CHECK(mu[parse_config("01")] == doctest::Approx(0.2));
  CHECK(mu[parse_config("10")] == doctest::Approx(0.4));
  CHECK(mu[parse_config("11")] == doctest::Approx(0.2));
}

TEST_CASE("stationary law matches the Gauss-Jordan oracle") {
  for (double q : {0.0, 0.3, 0.7}) {
    for (auto [a, b] : {std::pair{1.0, 1.0}, {0.3, 0.8}, {0.8, 0.3}, {0.1, 0.15}, {1.5, 0.4}}) {
      for (int n = 1; n <= 6; ++n) {
        const auto p = make_params(n, q, a, b);
        const auto mu = exact::stationary_exact(p);
        CHECK(max_abs_diff(mu, oracle::stationary(p)) < 1e-12);
        for (Config c = 0; c < mu.size(); ++c) CHECK(mu[c] > 0.0);
      }
    }
  }
}

TEST_CASE("solvers agree") {
  const auto p = make_params(9, 0.3, 0.45, 0.7);
  const auto dense = exact::stationary_exact(p, {.solver = exact::Solver::DenseLu});
  const auto sparse = exact::stationary_exact(p, {.solver = exact::Solver::SparseLu});
  const auto power = exact::stationary_exact(p, {.solver = exact::Solver::PowerIteration});
  CHECK(tv_distance(dense, sparse) < 1e-12);
  CHECK(tv_distance(dense, power) < 1e-8);
  const auto g = exact::build_generator(p);
  CHECK(exact::balance_residual(g, dense.weights()) < 1e-12);
}

TEST_CASE("power iteration: serial and parallel agree") {
  const auto p = make_params(10, 0.2, 0.6, 0.5);
  const auto g = exact::build_generator(p);
  const double lambda = exact::uniformization_rate(p);
  const auto a = exact::power_iteration(g, lambda, 1e-13, 5'000'000, false);
  const auto b = exact::power_iteration(g, lambda, 1e-13, 5'000'000, true);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  CHECK(m < 1e-14);
}

TEST_CASE("uniformization rate") {
  CHECK(exact::uniformization_rate(make_params(5, 0.3, 0.5, 1.0)) == doctest::Approx(6.0));
  CHECK(exact::uniformization_rate(make_params(5, 0.5, 2.0, 1.0)) == doctest::Approx(3.0 + 7.5));
}

TEST_CASE("current") {
  const auto p = make_params(2, 0.0, 1.0, 1.0);
  const auto mu = exact::stationary_exact(p);
  CHECK(exact::current_exact(mu, p, 1) == doctest::Approx(0.4));
  CHECK_THROWS_AS(exact::current_exact(mu, p, 2), ValidationError);
  CHECK_THROWS_AS(exact::current_exact(mu, p, 0), ValidationError);
  CHECK(exact::current_exact(ConfigDist::point_mass(2, 0), p, 1) == 0.0);

  const auto p7 = make_params(7, 0.4, 0.35, 0.6);
  const auto mu7 = exact::stationary_exact(p7);
  const double j1 = exact::current_exact(mu7, p7, 1);
  for (int i = 2; i < 7; ++i) CHECK(std::abs(exact::current_exact(mu7, p7, i) - j1) < 1e-12);
  // boundary fluxes carry the same current
  CHECK(p7.alpha * project(mu7, {1, 1})[0] == doctest::Approx(j1));
  CHECK(p7.beta * project(mu7, {7, 7})[1] == doctest::Approx(j1));
}

TEST_CASE("limiting current") {
  CHECK(*exact::current_limit(make_params(4, 0.0, 0.3, 0.8)) == doctest::Approx(0.21));
  CHECK(*exact::current_limit(make_params(4, 0.0, 1.0, 1.0)) == doctest::Approx(0.25));
  CHECK(*exact::current_limit(make_params(4, 0.5, 1.0, 1.0)) == doctest::Approx(0.125));
}

TEST_CASE("product line gives a Bernoulli product") {
  const auto p = params_from_uv(6, 0.4, 2.0, 0.5);
  const auto mu = exact::stationary_exact(p);
  CHECK(tv_distance(mu, bernoulli_product(p.alpha / (1.0 - p.q), 6)) < 1e-12);
}

TEST_CASE("monotone in the injection rate") {
  const auto lo = exact::stationary_exact(make_params(6, 0.3, 0.3, 0.6));
  const auto hi = exact::stationary_exact(make_params(6, 0.3, 0.5, 0.6));
  for (int s = 1; s <= 6; ++s) CHECK(project(lo, {s, s})[1] <= project(hi, {s, s})[1]);
}
