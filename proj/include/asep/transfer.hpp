#pragma once

// Height-indexed transfer contraction shared by the path representation and
// the polymer measures. Columns carry a mantissa vector plus one log scale;
// probabilities are only ever formed from ratios within a column or from
// products whose scales are tracked explicitly.

#include <algorithm>
#include <cmath>
#include <vector>

#include "asep/core.hpp"

namespace asep {

/// A real number stored as mantissa * exp(log_scale).
struct ScaledValue {
  double mantissa = 0.0;
  double log_scale = 0.0;

  double value() const { return mantissa * std::exp(log_scale); }
  double log() const { return std::log(mantissa) + log_scale; }
};

enum class PathMode { Free, Constraint };

enum class SiteChoice { Any, Occupied, Empty };

/// Per-height step weights. `up[h]` is the weight of a step h -> h+1 and
/// `down[h]` of a step h+1 -> h, i.e. diagonal steps are indexed by their
/// lower endpoint. Flat steps at height h are split by the occupation of the
/// site they encode.
template <class Real>
struct StepKernel {
  int h_max = 0;
  std::vector<Real> up, down, flat_occ, flat_emp;

  Real flat(int h) const { return flat_occ[h] + flat_emp[h]; }

  bool has_negative() const {
    for (int h = 0; h <= h_max; ++h) {
      if (up[h] < 0 || down[h] < 0 || flat_occ[h] < 0 || flat_emp[h] < 0) return true;
    }
    return false;
  }
};

namespace detail {

template <class Real>
std::vector<Real> powers(const Real& x, int count) {
  std::vector<Real> out(static_cast<std::size_t>(count) + 1);
  out[0] = Real(1);
  for (int i = 1; i <= count; ++i) out[i] = out[i - 1] * x;
  return out;
}

}  // namespace detail

/// Weights of the bi-colored path representation, normalized by 1/(1-q) per
/// step so that the summed weights satisfy the basic-weight recursion.
template <class Real>
StepKernel<Real> path_kernel(const ModelParams& p, int h_max) {
  const Real q(p.q), u(p.u), v(p.v), one(1);
  const Real scale = one / (one - q);
  const auto qp = detail::powers(q, h_max + 1);
  StepKernel<Real> k;
  k.h_max = h_max;
  k.up.resize(h_max + 1);
  k.down.resize(h_max + 1);
  k.flat_occ.resize(h_max + 1);
  k.flat_emp.resize(h_max + 1);
  for (int h = 0; h <= h_max; ++h) {
    k.up[h] = scale * (one - qp[h + 1]);
    k.down[h] = scale * (one - u * v * qp[h]);
    k.flat_occ[h] = scale * (one + v * qp[h]);
    k.flat_emp[h] = scale * (one + u * qp[h]);
  }
  return k;
}

/// exp(V) weights of the hard-wall polymer. Diagonal steps between heights
/// h and h+1 carry sqrt((1-q^{h+1})(1-uv q^h)) in either direction.
template <class Real>
StepKernel<Real> polymer_kernel(const ModelParams& p, int h_max) {
  using std::sqrt;
  const Real q(p.q), u(p.u), v(p.v), one(1);
  const auto qp = detail::powers(q, h_max + 1);
  StepKernel<Real> k;
  k.h_max = h_max;
  k.up.resize(h_max + 1);
  k.down.resize(h_max + 1);
  k.flat_occ.resize(h_max + 1);
  k.flat_emp.resize(h_max + 1);
  for (int h = 0; h <= h_max; ++h) {
    const Real prod = (one - qp[h + 1]) * (one - u * v * qp[h]);
    const Real diag = prod > 0 ? Real(sqrt(prod)) : Real(0);
    k.up[h] = diag;
    k.down[h] = diag;
    k.flat_occ[h] = one + v * qp[h];
    k.flat_emp[h] = one + u * qp[h];
  }
  return k;
}

template <class Real>
struct Column {
  std::vector<Real> w;
  double log_scale = 0.0;

  int cap() const { return static_cast<int>(w.size()) - 1; }

  /// Divides by the largest magnitude; no-op on an all-zero column.
  void rescale() {
    using std::abs;
    using std::log;
    Real m(0);
    for (const Real& x : w) {
      const Real a = abs(x);
      if (a > m) m = a;
    }
    if (m > 0) {
      for (Real& x : w) x /= m;
      log_scale += static_cast<double>(log(m));
    }
  }
};

/// Advances a forward column by one site. `cap` bounds the heights kept.
template <class Real>
Column<Real> step_forward(const StepKernel<Real>& k, const Column<Real>& in, int cap, SiteChoice choice) {
  Column<Real> out;
  out.w.assign(static_cast<std::size_t>(cap) + 1, Real(0));
  out.log_scale = in.log_scale;
  const int top = std::min(in.cap(), k.h_max);
  for (int h = 0; h <= top; ++h) {
    const Real& x = in.w[h];
    if (x == 0) continue;
    if (choice != SiteChoice::Empty) {
      if (h + 1 <= cap) out.w[h + 1] += x * k.up[h];
      if (h <= cap) out.w[h] += x * k.flat_occ[h];
    }
    if (choice != SiteChoice::Occupied) {
      if (h >= 1 && h - 1 <= cap) out.w[h - 1] += x * k.down[h - 1];
      if (h <= cap) out.w[h] += x * k.flat_emp[h];
    }
  }
  return out;
}

/// Backward column at position i from the column at position i+1: total
/// suffix weight starting at height h.
template <class Real>
Column<Real> step_backward(const StepKernel<Real>& k, const Column<Real>& next, int cap, SiteChoice choice) {
  Column<Real> out;
  out.w.assign(static_cast<std::size_t>(cap) + 1, Real(0));
  out.log_scale = next.log_scale;
  const int ncap = next.cap();
  for (int h = 0; h <= std::min(cap, k.h_max); ++h) {
    Real s(0);
    if (choice != SiteChoice::Empty) {
      if (h + 1 <= ncap && h + 1 <= k.h_max) s += k.up[h] * next.w[h + 1];
      if (h <= ncap) s += k.flat_occ[h] * next.w[h];
    }
    if (choice != SiteChoice::Occupied) {
      if (h >= 1 && h - 1 <= ncap) s += k.down[h - 1] * next.w[h - 1];
      if (h <= ncap) s += k.flat_emp[h] * next.w[h];
    }
    out.w[h] = s;
  }
  return out;
}

/// Largest height reachable at `position` on a path of length n.
inline int height_cap(PathMode mode, int n, int position, int h_max) {
  int c = std::min(position, h_max);
  if (mode == PathMode::Constraint) c = std::min(c, n - position);
  return std::max(c, 0);
}

template <class Real>
Column<Real> initial_column() {
  Column<Real> c;
  c.w.assign(1, Real(1));
  return c;
}

/// Terminal backward column at position n.
template <class Real>
Column<Real> terminal_column(PathMode mode, int cap) {
  Column<Real> c;
  if (mode == PathMode::Constraint) {
    c.w.assign(1, Real(1));
  } else {
    c.w.assign(static_cast<std::size_t>(cap) + 1, Real(1));
  }
  return c;
}

/// Full forward and backward tables. Column i covers heights
/// 0..height_cap(mode, n, i, h_max).
template <class Real>
class BasicTransferTables {
 public:
  BasicTransferTables(StepKernel<Real> kernel, int n, PathMode mode)
      : kernel_(std::move(kernel)), n_(n), mode_(mode) {
    const int h_max = kernel_.h_max;
    forward_.reserve(n + 1);
    forward_.push_back(initial_column<Real>());
    for (int i = 1; i <= n; ++i) {
      forward_.push_back(step_forward(kernel_, forward_.back(), height_cap(mode, n, i, h_max), SiteChoice::Any));
      forward_.back().rescale();
    }
    backward_.resize(n + 1);
    backward_[n] = terminal_column<Real>(mode, height_cap(mode, n, n, h_max));
    for (int i = n - 1; i >= 0; --i) {
      backward_[i] = step_backward(kernel_, backward_[i + 1], height_cap(mode, n, i, h_max), SiteChoice::Any);
      backward_[i].rescale();
    }
  }

  int n() const { return n_; }
  int h_max() const { return kernel_.h_max; }
  PathMode mode() const { return mode_; }
  const StepKernel<Real>& kernel() const { return kernel_; }
  const Column<Real>& forward(int i) const { return forward_[i]; }
  const Column<Real>& backward(int i) const { return backward_[i]; }

  /// log of the total weight of admissible paths.
  double log_partition() const {
    using std::log;
    Real s(0);
    const Column<Real>& b = backward_[0];
    s = b.w[0];
    return static_cast<double>(log(s)) + b.log_scale;
  }

  /// Exact law of the height at `position`.
  std::vector<Real> height_marginal(int position) const {
    const Column<Real>& f = forward_[position];
    const Column<Real>& b = backward_[position];
    const int top = std::min(f.cap(), b.cap());
    std::vector<Real> out(static_cast<std::size_t>(f.cap()) + 1, Real(0));
    Real total(0);
    for (int h = 0; h <= top; ++h) {
      out[h] = f.w[h] * b.w[h];
      total += out[h];
    }
    for (Real& x : out) x /= total;
    return out;
  }

 private:
  StepKernel<Real> kernel_;
  int n_;
  PathMode mode_;
  std::vector<Column<Real>> forward_;
  std::vector<Column<Real>> backward_;
};

using TransferTables = BasicTransferTables<double>;

}  // namespace asep
