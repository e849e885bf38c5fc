#include "plotpos/beta.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace plotpos {

namespace {

constexpr int kDirectSumLimit = 50;  // direct binomial sum up to this n

void require_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(what) + " must lie in [0, 1]");
  }
}

void require_solver_config(const SolverConfig& cfg) {
  if (!(cfg.abs_tol > 0.0)) throw std::domain_error("abs_tol must be positive");
  if (cfg.max_iter < 1) throw std::domain_error("max_iter must be at least 1");
}

// Continued fraction for the regularized incomplete beta, evaluated with the
// modified Lentz scheme. Converges for x < (a+1)/(a+b+2); callers use the
// symmetry I_x(a,b) = 1 - I_{1-x}(b,a) otherwise.
double ibeta_cf(double a, double b, double x) {
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double fpmin = 1e-300;
  constexpr int max_terms = 10000;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= max_terms; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::fabs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= eps) return h;
  }
  throw SolverError("incomplete beta continued fraction did not converge", 0.0, 1.0);
}

// Regularized incomplete beta with the log-Beta normalizer precomputed.
double ibeta_reg(double a, double b, double x, double log_beta_ab) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta_ab);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * ibeta_cf(a, b, x) / a;
  }
  return 1.0 - front * ibeta_cf(b, a, 1.0 - x) / b;
}

double beta_density(double a, double b, double x, double log_beta_ab) {
  if (x == 0.0) {
    if (a < 1.0) return std::numeric_limits<double>::infinity();
    if (a == 1.0) return std::exp(-log_beta_ab);
    return 0.0;
  }
  if (x == 1.0) {
    if (b < 1.0) return std::numeric_limits<double>::infinity();
    if (b == 1.0) return std::exp(-log_beta_ab);
    return 0.0;
  }
  return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - log_beta_ab);
}

// Direct binomial sum for the order-statistic CDF, in log space with Kahan
// summation. All terms are positive, so the only error sources are the
// exp/log evaluations themselves.
double order_stat_cdf_direct(int n, int i, double u) {
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  const double log_u = std::log(u);
  const double log_1mu = std::log1p(-u);
  double log_binom = std::lgamma(n + 1.0) - std::lgamma(i + 1.0) - std::lgamma(n - i + 1.0);
  double sum = 0.0;
  double comp = 0.0;
  for (int j = i; j <= n; ++j) {
    const double term = std::exp(log_binom + j * log_u + (n - j) * log_1mu);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (j < n) log_binom += std::log((n - j) / (j + 1.0));
  }
  return sum < 1.0 ? sum : 1.0;
}

}  // namespace

BetaParams::BetaParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
  if (!(std::isfinite(alpha) && alpha > 0.0) || !(std::isfinite(beta) && beta > 0.0)) {
    throw std::domain_error("Beta shape parameters must be positive and finite");
  }
}

OrderStatIndex::OrderStatIndex(int n_, int i_) : n(n_), i(i_) {
  if (n < 1) throw std::domain_error("sample size n must be at least 1");
  if (i < 1 || i > n) throw std::domain_error("order-statistic rank i must satisfy 1 <= i <= n");
}

BetaParams OrderStatIndex::beta_params() const {
  return BetaParams(static_cast<double>(i), static_cast<double>(n - i + 1));
}

SolverError::SolverError(const std::string& what, double lo, double hi)
    : std::runtime_error(what), lo_(lo), hi_(hi) {}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

double beta_pdf(const BetaParams& params, double x) {
  require_unit_interval(x, "density argument x");
  return beta_density(params.alpha, params.beta, x, log_beta(params.alpha, params.beta));
}

double beta_cdf(const BetaParams& params, double x) {
  require_unit_interval(x, "CDF argument x");
  return ibeta_reg(params.alpha, params.beta, x, log_beta(params.alpha, params.beta));
}

double order_stat_cdf(const OrderStatIndex& idx, double u) {
  require_unit_interval(u, "order-statistic CDF argument u");
  if (idx.n <= kDirectSumLimit) return order_stat_cdf_direct(idx.n, idx.i, u);
  return beta_cdf(idx.beta_params(), u);
}

double beta_median_bisection(const OrderStatIndex& idx, const SolverConfig& cfg) {
  require_solver_config(cfg);
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    if (hi - lo <= cfg.abs_tol) return 0.5 * (lo + hi);
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // bracket at floating-point resolution
    const double f = order_stat_cdf(idx, mid) - 0.5;
    if (f == 0.0) return mid;
    if (f < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw SolverError("bisection for the order-statistic median did not reach tolerance", lo, hi);
}

double beta_quantile_newton(const BetaParams& params, double p, const SolverConfig& cfg) {
  require_solver_config(cfg);
  if (!(std::isfinite(p) && p > 0.0 && p < 1.0)) {
    throw std::domain_error("quantile level p must lie in (0, 1)");
  }
  const double a = params.alpha;
  const double b = params.beta;
  const double lb = log_beta(a, b);
  double lo = 0.0;
  double hi = 1.0;
  double x = a / (a + b);  // start from the mean
  for (int it = 0; it < cfg.max_iter; ++it) {
    const double f = ibeta_reg(a, b, x, lb) - p;
    if (std::fabs(f) <= cfg.abs_tol) return x;
    if (f < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    // Where the CDF is steep, one ulp of x can move the residual by more
    // than abs_tol; once the bracket is at floating-point resolution no
    // representable x does better, so the current iterate is the answer.
    if (hi - lo <= std::numeric_limits<double>::epsilon() * hi) return x;
    const double dens = beta_density(a, b, x, lb);
    double next = x - f / dens;
    if (!std::isfinite(next) || next <= lo || next >= hi || next == x) {
      next = 0.5 * (lo + hi);
    }
    x = next;
  }
  throw SolverError("Newton iteration for the Beta quantile did not reach tolerance", lo, hi);
}

double tail_median(int n, Tail which) {
  if (n < 1) throw std::domain_error("sample size n must be at least 1");
  const double z = -std::numbers::ln2 / n;
  // 2^(-1/n) and its complement; expm1 keeps the small first-position value
  // accurate for large n.
  return which == Tail::First ? -std::expm1(z) : std::exp(z);
}

}  // namespace plotpos
