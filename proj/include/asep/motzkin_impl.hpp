#pragma once

#include <string>

#include "asep/motzkin.hpp"

namespace asep::motzkin {

namespace detail {

inline void check_interval(const ModelParams& p, Interval I) {
  if (I.first < 1 || I.first > I.last || I.last > p.n) {
    throw ValidationError("interval: need 1 <= a <= b <= n");
  }
  if (I.size() > 20) throw CapacityError("interval: at most 20 sites can be projected exactly");
}

}  // namespace detail

template <class Real>
std::vector<Real> projected_law(const ModelParams& p, Interval I, const TransferOptions& opts) {
  detail::check_interval(p, I);
  const int n = p.n;
  const int H = resolve_height_cap(p, opts.h_max);
  const StepKernel<Real> k = path_kernel<Real>(p, H);
  if (k.has_negative() && !opts.signed_mode) {
    throw ValidationError(
        "projected_stationary_transfer: step weights are negative (shock region, uv > 1); "
        "enable signed mode to sum signed path weights");
  }
  const auto cap = [&](int i) { return height_cap(PathMode::Constraint, n, i, H); };

  Column<Real> f = initial_column<Real>();
  for (int i = 1; i < I.first; ++i) {
    f = step_forward(k, f, cap(i), SiteChoice::Any);
    f.rescale();
  }
  Column<Real> b = terminal_column<Real>(PathMode::Constraint, 0);
  for (int i = n - 1; i >= I.last; --i) {
    b = step_backward(k, b, cap(i), SiteChoice::Any);
    b.rescale();
  }

  const int m = I.size();
  const std::ptrdiff_t patterns = std::ptrdiff_t{1} << m;
  std::vector<Real> out(static_cast<std::size_t>(patterns), Real(0));
#pragma omp parallel for schedule(dynamic, 16) if (opts.parallel)
  for (std::ptrdiff_t pat = 0; pat < patterns; ++pat) {
    Column<Real> col = f;
    for (int j = 0; j < m; ++j) {
      const SiteChoice c = ((pat >> j) & 1) ? SiteChoice::Occupied : SiteChoice::Empty;
      col = step_forward(k, col, cap(I.first + j), c);
    }
    Real s(0);
    for (int h = 0; h <= std::min(col.cap(), b.cap()); ++h) s += col.w[h] * b.w[h];
    out[pat] = s;
  }

  using std::abs;
  Real total(0), scale(0);
  for (const Real& x : out) {
    total += x;
    if (abs(x) > scale) scale = abs(x);
  }
  if (!(total > 0)) {
    throw NumericalError("projected_stationary_transfer: signed total mass is not positive (shock-region weights)");
  }
  for (Real& x : out) {
    if (x < 0) {
      if (x < -Real(1e-12) * scale) {
        throw NumericalError("projected_stationary_transfer: negative projected mass after summation");
      }
      x = 0;
    }
    x /= total;
  }
  return out;
}

}  // namespace asep::motzkin
