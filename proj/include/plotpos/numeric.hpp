#pragma once

#include <cmath>
#include <utility>

namespace plotpos {

namespace detail {

template <class F>
double simpson_step(F& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth, int force_depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // The error estimate is only trusted below the forced depth: sharply
  // peaked integrands can make coarse panels agree by accident.
  if (depth <= 0 || (force_depth <= 0 && std::fabs(delta) <= 15.0 * tol)) {
    return left + right + delta / 15.0;  // Richardson extrapolation
  }
  return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1, force_depth - 1) +
         simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1, force_depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature of f over [a, b] to absolute tolerance tol.
/// The integrand must be finite on the closed interval; callers split at
/// known kinks themselves.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48,
                        int min_depth = 5) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth, min_depth);
}

}  // namespace plotpos
