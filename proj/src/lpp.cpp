#include "asep/lpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <string>

#include "asep/rng.hpp"

namespace asep::lpp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string point_string(Point v) { return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")"; }

// Last-passage values on the rectangle [v, w] restricted to the strip,
// including both endpoint weights; -inf marks cells outside the strip.
struct Table {
  Point origin;
  long width = 0, height = 0;
  std::vector<double> g;
  double& at(long i, long j) { return g[static_cast<std::size_t>(j * width + i)]; }
  double at(long i, long j) const { return g[static_cast<std::size_t>(j * width + i)]; }
};

Table fill_table(const LppEnvironment& env, Point v, Point w) {
  if (w.x < v.x || w.y < v.y) throw ValidationError("passage_time: need w >= v componentwise");
  if (!env.in_strip(v) || !env.in_strip(w)) throw ValidationError("passage_time: endpoints must lie in the strip");
  Table t{v, w.x - v.x + 1, w.y - v.y + 1, {}};
  if (static_cast<double>(t.width) * static_cast<double>(t.height) > 2e8) {
    throw CapacityError("passage_time: rectangle too large");
  }
  t.g.assign(static_cast<std::size_t>(t.width * t.height), kNegInf);
  for (long j = 0; j < t.height; ++j) {
    for (long i = 0; i < t.width; ++i) {
      const Point z{v.x + i, v.y + j};
      if (!env.in_strip(z)) continue;
      double best = (i == 0 && j == 0) ? 0.0 : kNegInf;
      if (i > 0) best = std::max(best, t.at(i - 1, j));
      if (j > 0) best = std::max(best, t.at(i, j - 1));
      if (best == kNegInf) continue;
      t.at(i, j) = best + env.weight(z);
    }
  }
  if (t.at(t.width - 1, t.height - 1) == kNegInf) {
    throw ValidationError("passage_time: no up-right path inside the strip from " + point_string(v) + " to " +
                          point_string(w));
  }
  return t;
}

}  // namespace

LppEnvironment::LppEnvironment(int n, Window window, double alpha, double beta, std::uint64_t seed)
    : n_(n), window_(window), alpha_(alpha), beta_(beta), seed_(seed) {
  if (n < 1) throw ValidationError("n: must be >= 1");
  if (!(alpha > 0.0)) throw ValidationError("alpha: must be positive");
  if (!(beta > 0.0)) throw ValidationError("beta: must be positive");
  if (window.lo > window.hi) throw ValidationError("window: need lo <= hi");
}

double LppEnvironment::rate(Point v) const {
  const long d = v.x - v.y;
  if (d == 0) return alpha_;
  if (d == n_) return beta_;
  return 1.0;
}

double LppEnvironment::weight(Point v) const {
  if (!in_strip(v)) throw ValidationError("weight: site " + point_string(v) + " lies outside the strip");
  const long line = v.x + v.y;
  if (line < window_.lo || line > window_.hi) {
    throw CapacityError("weight: line " + std::to_string(line) + " outside the window; enlarge it");
  }
  const auto b = Philox::block(seed_, static_cast<std::uint64_t>(v.x), static_cast<std::uint64_t>(v.y));
  return -std::log(Philox::block_uniform(b)) / rate(v);
}

LppEnvironment sample_environment(int n, Window window, double alpha, double beta, std::uint64_t seed) {
  return LppEnvironment(n, window, alpha, beta, seed);
}

LppEnvironment rescale_boundary(const LppEnvironment& env, double alpha_new, double beta_new) {
  return LppEnvironment(env.n(), env.window(), alpha_new, beta_new, env.seed());
}

double passage_time(const LppEnvironment& env, Point v, Point w) {
  if (v == w) {
    if (!env.in_strip(v)) throw ValidationError("passage_time: endpoints must lie in the strip");
    return 0.0;
  }
  const Table t = fill_table(env, v, w);
  return t.at(t.width - 1, t.height - 1) - env.weight(w);
}

std::vector<Point> geodesic(const LppEnvironment& env, Point v, Point w) {
  const Table t = fill_table(env, v, w);
  std::vector<Point> path;
  long i = t.width - 1, j = t.height - 1;
  path.push_back(w);
  while (i > 0 || j > 0) {
    const double left = i > 0 ? t.at(i - 1, j) : kNegInf;
    const double down = j > 0 ? t.at(i, j - 1) : kNegInf;
    if (left >= down) {
      --i;
    } else {
      --j;
    }
    path.push_back({v.x + i, v.y + j});
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Interface initial_interface(const std::vector<std::uint8_t>& eta) {
  Interface g;
  g.reserve(eta.size() + 1);
  g.push_back({0, 0});
  for (std::uint8_t s : eta) {
    Point p = g.back();
    if (s) {
      --p.y;
    } else {
      ++p.x;
    }
    g.push_back(p);
  }
  return g;
}

std::vector<std::uint8_t> interface_to_config(const Interface& g) {
  std::vector<std::uint8_t> eta;
  for (std::size_t i = 1; i < g.size(); ++i) {
    const long dx = g[i].x - g[i - 1].x, dy = g[i].y - g[i - 1].y;
    if (dx == 1 && dy == 0) {
      eta.push_back(0);
    } else if (dx == 0 && dy == -1) {
      eta.push_back(1);
    } else {
      throw ValidationError("interface: steps must be e_1 or -e_2");
    }
  }
  return eta;
}

Evolution evolve_interface(const LppEnvironment& env, const std::vector<std::uint8_t>& eta, double t) {
  const int n = env.n();
  if (static_cast<int>(eta.size()) != n) throw ValidationError("eta_init: length must equal the strip width");
  if (t < 0.0) throw ValidationError("t: must be >= 0");
  const Interface g0 = initial_interface(eta);
  // Site j >= 1 on diagonal d is g0[d] + j(1,1) and lies on line s0[d] + 2j.
  // Its parents are site j - eta_d on diagonal d-1 and site j - 1 + eta_{d+1}
  // on diagonal d+1; sites j <= 0 are filled at time 0.
  std::vector<long> s0(n + 1), last_j(n + 1, 0), count(n + 1, 0);
  std::vector<double> last_f(n + 1, 0.0);
  std::vector<char> done(n + 1, 0);
  long lo = std::numeric_limits<long>::max();
  for (int d = 0; d <= n; ++d) {
    s0[d] = g0[d].x + g0[d].y;
    lo = std::min(lo, s0[d]);
  }
  int remaining = n + 1;
  // Parent value or +inf when the parent is known to fill after t.
  auto parent = [&](int d, long j) {
    if (j <= 0) return 0.0;
    if (last_j[d] == j) return last_f[d];
    return std::numeric_limits<double>::infinity();
  };
  for (long line = lo + 1; remaining > 0; ++line) {
    if (line > env.window().hi) throw CapacityError("evolve_interface: growth left the window; enlarge it");
    for (int d = 0; d <= n; ++d) {
      if (done[d] || line <= s0[d] || (line - s0[d]) % 2 != 0) continue;
      const long j = (line - s0[d]) / 2;
      double before = 0.0;
      if (d > 0) before = std::max(before, parent(d - 1, j - eta[d - 1]));
      if (d < n) before = std::max(before, parent(d + 1, j - 1 + eta[d]));
      double f = std::numeric_limits<double>::infinity();
      if (before <= t) f = before + env.weight({g0[d].x + j, g0[d].y + j});
      last_j[d] = j;
      last_f[d] = f;
      if (f <= t) {
        count[d] = j;
      } else {
        done[d] = 1;
        --remaining;
      }
    }
  }
  Evolution ev;
  for (int d = 0; d <= n; ++d) ev.interface.push_back({g0[d].x + count[d], g0[d].y + count[d]});
  ev.config = interface_to_config(ev.interface);
  return ev;
}

LineStats line_stats(const LppEnvironment& env, long n_line, long k) {
  if (k < 1) throw ValidationError("line_stats: k must be >= 1");
  const int n = env.n();
  if (n_line < env.window().lo || n_line + k > env.window().hi) {
    throw CapacityError("line_stats: lines outside the window");
  }
  // Points on line L are indexed by the diagonal d = x - y with d = L mod 2.
  std::vector<int> sources;
  for (int d = 0; d <= n; ++d) {
    if (((n_line - d) % 2 + 2) % 2 == 0) sources.push_back(d);
  }
  if (sources.empty()) throw ValidationError("line_stats: no strip points on the first line");
  double t_min = std::numeric_limits<double>::infinity(), t_max = kNegInf;
#pragma omp parallel for schedule(dynamic, 1) reduction(min : t_min) reduction(max : t_max)
  for (std::size_t s = 0; s < sources.size(); ++s) {
    std::vector<double> cur(n + 1, kNegInf), next(n + 1);
    const int d0 = sources[s];
    auto at = [](long line, int d) { return Point{(line + d) / 2, (line - d) / 2}; };
    cur[d0] = env.weight(at(n_line, d0));
    for (long line = n_line + 1; line <= n_line + k; ++line) {
      std::fill(next.begin(), next.end(), kNegInf);
      for (int d = 0; d <= n; ++d) {
        if (((line - d) % 2 + 2) % 2 != 0) continue;
        double best = kNegInf;
        if (d > 0) best = std::max(best, cur[d - 1]);
        if (d < n) best = std::max(best, cur[d + 1]);
        if (best == kNegInf) continue;
        next[d] = line == n_line + k ? best : best + env.weight(at(line, d));
      }
      cur.swap(next);
    }
    for (int d = 0; d <= n; ++d) {
      if (cur[d] == kNegInf) continue;
      t_min = std::min(t_min, cur[d]);
      t_max = std::max(t_max, cur[d]);
    }
  }
  if (t_max == kNegInf) throw ValidationError("line_stats: no ordered endpoint pairs");
  return {t_min, t_max};
}

double transversal_fluctuation(const std::vector<Point>& path, double m) {
  if (path.empty()) return 0.0;
  std::map<long, std::pair<long, long>> column;
  for (const Point& p : path) {
    auto [it, fresh] = column.try_emplace(p.x, p.y, p.y);
    if (!fresh) {
      it->second.first = std::min(it->second.first, p.y);
      it->second.second = std::max(it->second.second, p.y);
    }
  }
  const Point o = path.front();
  double tf = 0.0;
  for (const auto& [x, span] : column) {
    const double line = o.y + m * static_cast<double>(x - o.x);
    const double dist = std::max({0.0, span.first - line, line - span.second});
    tf = std::max(tf, dist);
  }
  return tf;
}

bool coalescence_check(const LppEnvironment& env, Point a1, Point a2, Point a3, Point a4) {
  const auto g1 = geodesic(env, a1, a4);
  const auto g2 = geodesic(env, a2, a3);
  std::set<std::pair<long, long>> seen;
  for (const Point& p : g1) seen.emplace(p.x, p.y);
  for (const Point& p : g2) {
    if (seen.count({p.x, p.y})) return true;
  }
  return false;
}

void write_interface(std::ostream& os, const Interface& g) {
  os << "i,x,y\n";
  for (std::size_t i = 0; i < g.size(); ++i) os << i << ',' << g[i].x << ',' << g[i].y << '\n';
}

}  // namespace asep::lpp
