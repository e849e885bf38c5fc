#include "plotpos/positions.hpp"

#include <cmath>
#include <utility>

namespace plotpos {

namespace {

constexpr double kSymmetryTol = 1e-12;

// Builds a PIV from its lower half: entries below the center come from
// lower(i), the odd-n center is exactly 1/2, and the upper half is the
// reflection 1 - p_{n+1-i}. Symmetry then holds by construction.
template <class LowerFn>
PIV reflect_lower_half(int n, LowerFn&& lower) {
  std::vector<double> values(static_cast<size_t>(n));
  const int half = n / 2;
  for (int i = 1; i <= half; ++i) {
    const double p = lower(i);
    values[static_cast<size_t>(i - 1)] = p;
    values[static_cast<size_t>(n - i)] = 1.0 - p;
  }
  if (n % 2 == 1) values[static_cast<size_t>(half)] = 0.5;
  return PIV::create(n, std::move(values));
}

double constant_a_position(int n, int i, double a) {
  const double denom = n + 1.0 - 2.0 * a;
  if (!(denom > 0.0)) throw std::domain_error("degenerate denominator n+1-2a <= 0");
  return (i - a) / denom;
}

}  // namespace

double PIV::at(int i) const {
  if (i < 1 || i > n) throw std::domain_error("PIV index out of range");
  return values[static_cast<size_t>(i - 1)];
}

PIV PIV::create(int n, std::vector<double> values) {
  if (n < 1) throw std::domain_error("PIV requires n >= 1");
  if (values.size() != static_cast<size_t>(n)) {
    throw std::domain_error("PIV size does not match n");
  }
  for (int i = 0; i < n; ++i) {
    if (!(values[static_cast<size_t>(i)] > 0.0 && values[static_cast<size_t>(i)] < 1.0)) {
      throw std::domain_error("PIV entries must lie strictly inside (0, 1)");
    }
    if (i > 0 && !(values[static_cast<size_t>(i - 1)] < values[static_cast<size_t>(i)])) {
      throw std::domain_error("PIV entries must be strictly increasing");
    }
    const double mirror = values[static_cast<size_t>(n - 1 - i)];
    if (std::fabs(values[static_cast<size_t>(i)] + mirror - 1.0) > kSymmetryTol) {
      throw std::domain_error("PIV entries must satisfy p_i + p_{n+1-i} = 1");
    }
  }
  PIV piv;
  piv.n = n;
  piv.values = std::move(values);
  return piv;
}

double erto_shift(int n) {
  if (n < 2) throw std::domain_error("Erto's shift a(n) requires n >= 2");
  return n + (n - 1.0) / (std::exp2(1.0 / n) - 2.0);
}

PositionMethod PositionMethod::weibull() { return {Kind::Weibull, 0.0, {}}; }

PositionMethod PositionMethod::beta_median_exact(const SolverConfig& cfg) {
  return {Kind::BetaMedianExact, 0.0, cfg};
}

PositionMethod PositionMethod::beta_median_cran(const SolverConfig& cfg) {
  return {Kind::BetaMedianCran, 0.0, cfg};
}

PositionMethod PositionMethod::constant_a(double a) {
  if (!(std::isfinite(a) && a >= 0.0 && a < 1.0)) {
    throw std::domain_error("constant shift a must satisfy 0 <= a < 1");
  }
  return {Kind::ConstantA, a, {}};
}

PositionMethod PositionMethod::erto() { return {Kind::Erto, 0.0, {}}; }

PositionMethod PositionMethod::kerman() { return {Kind::Kerman, 1.0 / 3.0, {}}; }

PositionMethod PositionMethod::log_e_over_2() { return {Kind::LogEOver2, kLogEOver2Shift, {}}; }

PIV weibull_piv(int n) {
  if (n < 1) throw std::domain_error("PIV requires n >= 1");
  return reflect_lower_half(n, [n](int i) { return i / (n + 1.0); });
}

PIV beta_median_piv(int n, MedianEngine engine, const SolverConfig& cfg) {
  if (n < 1) throw std::domain_error("PIV requires n >= 1");
  return reflect_lower_half(n, [&](int i) {
    const OrderStatIndex idx(n, i);
    return engine == MedianEngine::Bisection ? beta_median_bisection(idx, cfg)
                                             : beta_quantile_newton(idx.beta_params(), 0.5, cfg);
  });
}

PIV approx_piv(int n, const PositionMethod& method) {
  if (n < 1) throw std::domain_error("PIV requires n >= 1");
  double a = 0.0;
  switch (method.kind) {
    case PositionMethod::Kind::ConstantA:
    case PositionMethod::Kind::Kerman:
    case PositionMethod::Kind::LogEOver2:
      a = method.shift;
      break;
    case PositionMethod::Kind::Erto:
      // a(1) is 0/0; any symmetric scheme gives p_1 = 1/2, which is what the
      // reflection produces without touching the formula.
      a = n == 1 ? 0.0 : erto_shift(n);
      break;
    default:
      throw std::domain_error("approx_piv requires a shift-family method");
  }
  return reflect_lower_half(n, [n, a](int i) { return constant_a_position(n, i, a); });
}

PIV piv_for(int n, const PositionMethod& method) {
  switch (method.kind) {
    case PositionMethod::Kind::Weibull:
      return weibull_piv(n);
    case PositionMethod::Kind::BetaMedianExact:
      return beta_median_piv(n, MedianEngine::Bisection, method.solver);
    case PositionMethod::Kind::BetaMedianCran:
      return beta_median_piv(n, MedianEngine::Newton, method.solver);
    default:
      return approx_piv(n, method);
  }
}

}  // namespace plotpos
