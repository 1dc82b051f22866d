#pragma once

// Brute-force reference computations used only by the tests. They share no
// code with the library: the generator is rebuilt from the jump rules, the
// null space is found by Gauss-Jordan elimination in long double, and path
// sums enumerate every step sequence.

#include <cmath>
#include <functional>
#include <vector>

#include "asep/core.hpp"

namespace oracle {

using asep::Config;
using asep::ModelParams;

inline int bit(Config c, int site) { return (c >> (site - 1)) & 1; }

/// Dense generator Q[s][t] (rate s -> t), diagonal = -exit rate.
inline std::vector<std::vector<long double>> generator(const ModelParams& p) {
  const int n = p.n;
  const std::size_t S = std::size_t{1} << n;
  std::vector<std::vector<long double>> Q(S, std::vector<long double>(S, 0.0L));
  for (Config s = 0; s < S; ++s) {
    if (!bit(s, 1)) Q[s][s | 1U] += p.alpha;
    if (bit(s, n)) Q[s][s ^ (Config{1} << (n - 1))] += p.beta;
    for (int x = 1; x < n; ++x) {
      const Config swap = s ^ (Config{3} << (x - 1));
      if (bit(s, x) && !bit(s, x + 1)) Q[s][swap] += 1.0L;
      if (!bit(s, x) && bit(s, x + 1)) Q[s][swap] += p.q;
    }
    long double out = 0.0L;
    for (Config t = 0; t < S; ++t) {
      if (t != s) out += Q[s][t];
    }
    Q[s][s] = -out;
  }
  return Q;
}

/// Stationary law by Gauss-Jordan on pi Q = 0 with one equation replaced by
/// sum(pi) = 1. Intended for n <= 8.
inline std::vector<double> stationary(const ModelParams& p) {
  const auto Q = generator(p);
  const std::size_t S = Q.size();
  std::vector<std::vector<long double>> A(S, std::vector<long double>(S + 1, 0.0L));
  for (std::size_t i = 0; i < S; ++i) {
    for (std::size_t j = 0; j < S; ++j) A[i][j] = Q[j][i];
  }
  for (std::size_t j = 0; j < S; ++j) A[0][j] = 1.0L;
  A[0][S] = 1.0L;
  for (std::size_t c = 0; c < S; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < S; ++r) {
      if (std::fabs(A[r][c]) > std::fabs(A[piv][c])) piv = r;
    }
    std::swap(A[c], A[piv]);
    for (std::size_t r = 0; r < S; ++r) {
      if (r == c || A[r][c] == 0.0L) continue;
      const long double f = A[r][c] / A[c][c];
      for (std::size_t k = c; k <= S; ++k) A[r][k] -= f * A[c][k];
    }
  }
  std::vector<double> pi(S);
  for (std::size_t i = 0; i < S; ++i) pi[i] = static_cast<double>(A[i][S] / A[i][i]);
  return pi;
}

/// Calls f(steps) for every step sequence over {0: up, 1: flat filled,
/// 2: flat hollow, 3: down} of length n that stays >= 0 and ends at 0.
inline void for_each_motzkin(int n, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> steps(n);
  std::function<void(int, int)> rec = [&](int i, int h) {
    if (h > n - i) return;
    if (i == n) {
      if (h == 0) f(steps);
      return;
    }
    for (int s = 0; s < 4; ++s) {
      const int nh = h + (s == 0) - (s == 3);
      if (nh < 0) continue;
      steps[i] = s;
      rec(i + 1, nh);
    }
  };
  rec(0, 0);
}

}  // namespace oracle
