#pragma once

#include <stdexcept>
#include <string>

namespace plotpos {

// Shape pair (alpha, beta) of a Beta distribution. The i-th order statistic
// of n i.i.d. uniforms is Beta(i, n+1-i).
struct BetaParams {
  double alpha;
  double beta;
  BetaParams(double alpha_, double beta_);
};

// Rank i within an ordered sample of size n, 1 <= i <= n.
struct OrderStatIndex {
  int n;
  int i;
  OrderStatIndex(int n_, int i_);
  BetaParams beta_params() const;
};

struct SolverConfig {
  double abs_tol = 1e-12;
  int max_iter = 200;
};

// Root finding gave up before reaching the requested tolerance.
// Carries the last bracket so callers can see how far it got.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, double lo, double hi);
  double bracket_lo() const noexcept { return lo_; }
  double bracket_hi() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

/// log of the complete Beta function B(a, b).
double log_beta(double a, double b);

/// Beta density. Endpoints return the analytic limit; +infinity signals the
/// divergent cases (alpha < 1 at x = 0, beta < 1 at x = 1).
double beta_pdf(const BetaParams& params, double x);

/// Regularized incomplete beta I_x(alpha, beta), i.e. the Beta CDF.
double beta_cdf(const BetaParams& params, double x);

/// CDF of the i-th order statistic of n uniforms:
///   H(u) = sum_{j=i}^{n} C(n,j) u^j (1-u)^(n-j).
/// Evaluated by the direct binomial sum for n <= 50 (independent of the
/// incomplete-beta path) and via beta_cdf for larger n.
double order_stat_cdf(const OrderStatIndex& idx, double u);

/// Median of Beta(i, n+1-i) by bisection on order_stat_cdf.
/// The returned value is the midpoint of a final bracket of width <= abs_tol.
double beta_median_bisection(const OrderStatIndex& idx, const SolverConfig& cfg = {});

/// Beta quantile: the x with |I_x(alpha, beta) - p| <= abs_tol, found by
/// Newton iteration on the CDF with a bisection safeguard (iterates that
/// leave the current bracket are replaced by its midpoint).
double beta_quantile_newton(const BetaParams& params, double p, const SolverConfig& cfg = {});

enum class Tail { First, Last };

/// Closed-form order-statistic medians at the ends of the sample:
/// 1 - 2^(-1/n) for the first, 2^(-1/n) for the last.
double tail_median(int n, Tail which);

}  // namespace plotpos
