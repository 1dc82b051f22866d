#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "asep/core.hpp"

namespace asep::lpp {

struct Point {
  long x = 0;
  long y = 0;
  bool operator==(const Point&) const = default;
};

/// Anti-diagonal lines x + y in [lo, hi] that may be queried.
struct Window {
  long lo = -1'000'000;
  long hi = 1'000'000;
};

/// Exponential field on the strip 0 <= x - y <= n. Weights are a keyed hash
/// of (seed, site), so the field is never stored: omega(v) = X(v) / rate(v)
/// with X(v) a fixed Exp(1) variable and rate alpha on x = y, beta on
/// x - y = n and 1 elsewhere.
class LppEnvironment {
 public:
  LppEnvironment(int n, Window window, double alpha, double beta, std::uint64_t seed);

  int n() const { return n_; }
  Window window() const { return window_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  std::uint64_t seed() const { return seed_; }

  bool in_strip(Point v) const { return v.x - v.y >= 0 && v.x - v.y <= n_; }
  double rate(Point v) const;
  /// Throws CapacityError outside the window and ValidationError outside the strip.
  double weight(Point v) const;

 private:
  int n_;
  Window window_;
  double alpha_, beta_;
  std::uint64_t seed_;
};

LppEnvironment sample_environment(int n, Window window, double alpha, double beta, std::uint64_t seed);

/// Same underlying variables with new boundary rates: upper-boundary weights
/// scale by alpha/alpha_new, lower-boundary weights by beta/beta_new.
LppEnvironment rescale_boundary(const LppEnvironment& env, double alpha_new, double beta_new);

/// Maximal weight of an up-right path from v to w inside the strip, with the
/// endpoint w excluded.
double passage_time(const LppEnvironment& env, Point v, Point w);

/// A maximizing path v = gamma(0), ..., gamma(L) = w; ties prefer the e_1 step.
std::vector<Point> geodesic(const LppEnvironment& env, Point v, Point w);

/// g^0..g^n with g^i - g^{i-1} = e_1 for an empty site and -e_2 for an occupied one.
using Interface = std::vector<Point>;

Interface initial_interface(const std::vector<std::uint8_t>& eta);
std::vector<std::uint8_t> interface_to_config(const Interface& g);

struct Evolution {
  Interface interface;
  std::vector<std::uint8_t> config;
};

/// Growth interface at time t started from the staircase of eta. Sites behind
/// the initial staircase are filled at time 0; every other site fills at the
/// later of its two in-strip parents plus its own weight.
Evolution evolve_interface(const LppEnvironment& env, const std::vector<std::uint8_t>& eta_init, double t);

struct LineStats {
  double t_min = 0.0;
  double t_max = 0.0;
};

/// Extremes of passage_time(v, w) over v on x+y = n_line, w on x+y = n_line+k,
/// w >= v, both in the strip.
LineStats line_stats(const LppEnvironment& env, long n_line, long k);

/// Max over columns of the distance from the line of slope m through
/// path[0] to the vertical extent of the path in that column.
double transversal_fluctuation(const std::vector<Point>& path, double m);

/// Whether the geodesics a1 -> a4 and a2 -> a3 share a vertex.
bool coalescence_check(const LppEnvironment& env, Point a1, Point a2, Point a3, Point a4);

/// CSV with header i,x,y.
void write_interface(std::ostream& os, const Interface& g);

}  // namespace asep::lpp
