#pragma once

#include <numbers>
#include <vector>

#include "plotpos/beta.hpp"

namespace plotpos {

// Probability index vector: the ordered probabilities p_1 < ... < p_n at
// which theoretical quantiles are plotted against the order statistics.
struct PIV {
  int n = 0;
  std::vector<double> values;

  double at(int i) const;  // 1-based

  // Validates: size n, all entries in (0,1), strictly increasing, and
  // symmetric (p_i + p_{n+1-i} = 1 to 1e-12).
  static PIV create(int n, std::vector<double> values);
};

enum class MedianEngine { Bisection, Newton };

// The shift constant a = log(e/2) = 1 - log 2 that makes (i-a)/(n+1-2a)
// match the tail medians asymptotically.
inline constexpr double kLogEOver2Shift = 1.0 - std::numbers::ln2;

// Erto's n-dependent shift a(n) = n + (n-1)/(2^(1/n) - 2), which makes the
// approximation exact at p_1 and p_n. Defined for n >= 2.
double erto_shift(int n);

struct PositionMethod {
  enum class Kind {
    Weibull,          // p_i = i/(n+1)
    BetaMedianExact,  // median of Beta(i, n+1-i), bisection engine
    BetaMedianCran,   // same median, Newton quantile engine
    ConstantA,        // p_i = (i-a)/(n+1-2a) for a fixed shift a
    Erto,             // ConstantA with a = a(n)
    Kerman,           // ConstantA with a = 1/3
    LogEOver2,        // ConstantA with a = 1 - log 2
  };

  Kind kind = Kind::BetaMedianExact;
  double shift = 0.0;     // ConstantA only
  SolverConfig solver{};  // Beta-median engines only

  static PositionMethod weibull();
  static PositionMethod beta_median_exact(const SolverConfig& cfg = {});
  static PositionMethod beta_median_cran(const SolverConfig& cfg = {});
  static PositionMethod constant_a(double a);  // requires 0 <= a < 1
  static PositionMethod erto();
  static PositionMethod kerman();
  static PositionMethod log_e_over_2();
};

PIV weibull_piv(int n);
PIV beta_median_piv(int n, MedianEngine engine, const SolverConfig& cfg = {});
PIV approx_piv(int n, const PositionMethod& method);

/// Dispatch on the method tag.
PIV piv_for(int n, const PositionMethod& method);

}  // namespace plotpos
