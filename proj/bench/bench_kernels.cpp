// Serial reference versus OpenMP kernels. Prints wall time for each variant
// and the largest deviation between their outputs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>

#include "asep/exact_oracle.hpp"
#include "asep/motzkin.hpp"
#include "asep/simulator.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace asep;

namespace {

double seconds(const std::function<void()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void row(const char* name, double serial, double parallel, double diff) {
  std::printf("%-28s %10.4f %10.4f %8.2fx %10.2e\n", name, serial, parallel, serial / parallel, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;
  int threads = 1;
#ifdef _OPENMP
  threads = omp_get_max_threads();
#endif
  std::printf("threads: %d%s\n", threads, quick ? " (quick)" : "");
  std::printf("%-28s %10s %10s %9s %10s\n", "kernel", "serial_s", "omp_s", "speedup", "max_diff");

  {
    const ModelParams p = make_params(quick ? 200 : 800, 0.5, 0.5, 0.5);
    const int m = quick ? 8 : 12;
    const Interval I{p.n / 2 - m / 2 + 1, p.n / 2 - m / 2 + m};
    ConfigDist a, b;
    const double ts = seconds([&] { a = motzkin::projected_stationary_transfer(p, I, {.parallel = false}); });
    const double tp = seconds([&] { b = motzkin::projected_stationary_transfer(p, I, {.parallel = true}); });
    row("transfer pattern loop", ts, tp, max_diff(a.weights(), b.weights()));
  }
  {
    const ModelParams p = make_params(quick ? 12 : 16, 0.3, 0.7, 0.6);
    const auto g = exact::build_generator(p);
    const double lambda = exact::uniformization_rate(p);
    std::vector<double> a, b;
    const double ts = seconds([&] { a = exact::power_iteration(g, lambda, 1e-13, 5'000'000, false); });
    const double tp = seconds([&] { b = exact::power_iteration(g, lambda, 1e-13, 5'000'000, true); });
    row("power iteration", ts, tp, max_diff(a, b));
  }
  {
    const ModelParams p = make_params(quick ? 12 : 18, 0.2, 0.4, 0.9);
    ConfigDist a, b;
    const double ts = seconds([&] { a = motzkin::stationary_via_paths(p, false); });
    const double tp = seconds([&] { b = motzkin::stationary_via_paths(p, true); });
    row("basic weights (all configs)", ts, tp, max_diff(a.weights(), b.weights()));
  }
  {
    const ModelParams p = make_params(6, 0.0, 1.0, 1.0);
    sim::EmpiricalOptions o;
    o.n_samples = quick ? 20000 : 200000;
    o.burn_in = 100.0;
    o.replicas = 8;
    ConfigDist a, b;
    o.parallel = false;
    const double ts = seconds([&] { a = sim::empirical_projected(p, {1, 6}, o); });
    o.parallel = true;
    const double tp = seconds([&] { b = sim::empirical_projected(p, {1, 6}, o); });
    row("simulation replicas", ts, tp, max_diff(a.weights(), b.weights()));
  }
  return 0;
}
