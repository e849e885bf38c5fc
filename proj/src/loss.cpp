#include "plotpos/loss.hpp"

#include <cmath>

#include "plotpos/numeric.hpp"

namespace plotpos {

namespace {

void require_loss_point(double x, const char* what) {
  if (!std::isfinite(x)) throw std::domain_error(std::string(what) + " must be finite");
}

void require_open_unit(double p) {
  if (!(std::isfinite(p) && p > 0.0 && p < 1.0)) {
    throw std::domain_error("loss level p must lie in (0, 1)");
  }
}

}  // namespace

double probability_loss(const Distribution& dist, double a, double b) {
  require_loss_point(a, "loss argument a");
  require_loss_point(b, "loss argument b");
  return std::fabs(dist.cdf(b) - dist.cdf(a));
}

double expected_pl(const OrderStatIndex& idx, double p) {
  require_open_unit(p);
  // E|U - p| = mu - p + 2 (p I_p(a,b) - mu I_p(a+1,b)) with mu = a/(a+b),
  // using u f_{a,b}(u) = mu f_{a+1,b}(u) for the partial first moment.
  const double a = idx.i;
  const double b = idx.n - idx.i + 1.0;
  const double mu = a / (a + b);
  const double cdf_at_p = beta_cdf(BetaParams(a, b), p);
  const double partial_moment = mu * beta_cdf(BetaParams(a + 1.0, b), p);
  return mu - p + 2.0 * (p * cdf_at_p - partial_moment);
}

double fpl(const OrderStatIndex& idx, double p) {
  require_open_unit(p);
  // gamma = integral of |u - p| against the order-statistic law; after
  // integrating by parts this is the CDF-area form below, which is smooth on
  // both sides of p.
  const BetaParams params = idx.beta_params();
  constexpr double tol = 5e-13;
  const double below = adaptive_simpson([&](double u) { return beta_cdf(params, u); }, 0.0, p, tol);
  const double above =
      adaptive_simpson([&](double u) { return 1.0 - beta_cdf(params, u); }, p, 1.0, tol);
  return below + above;
}

double epl_minimizer(const OrderStatIndex& idx, const SolverConfig& cfg) {
  return beta_median_bisection(idx, cfg);
}

MonotoneMap::MonotoneMap(Kind kind, double slope, double intercept)
    : kind_(kind), slope_(slope), intercept_(intercept) {}

MonotoneMap MonotoneMap::affine(double slope, double intercept) {
  if (!(std::isfinite(slope) && slope > 0.0) || !std::isfinite(intercept)) {
    throw std::domain_error("affine map must have positive slope");
  }
  return MonotoneMap(Kind::Affine, slope, intercept);
}

MonotoneMap MonotoneMap::exp_map() { return MonotoneMap(Kind::Exp, 0.0, 0.0); }

MonotoneMap MonotoneMap::inverse_logit() { return MonotoneMap(Kind::InverseLogit, 0.0, 0.0); }

double MonotoneMap::apply(double x) const {
  switch (kind_) {
    case Kind::Affine:
      return slope_ * x + intercept_;
    case Kind::Exp:
      return std::exp(x);
    case Kind::InverseLogit:
      return 1.0 / (1.0 + std::exp(-x));
  }
  return x;
}

double MonotoneMap::invert(double y) const {
  switch (kind_) {
    case Kind::Affine:
      return (y - intercept_) / slope_;
    case Kind::Exp:
      return std::log(y);
    case Kind::InverseLogit:
      return std::log(y / (1.0 - y));
  }
  return y;
}

std::pair<double, double> pl_invariance_pair(const Distribution& dist, const MonotoneMap& map,
                                             double a, double b) {
  const double direct = probability_loss(dist, a, b);
  // The transformed variable phi(X) has CDF F(phi^{-1}(.)), so the loss on
  // the transformed scale is evaluated by pulling the mapped points back.
  const double ya = map.apply(a);
  const double yb = map.apply(b);
  const double transformed = std::fabs(dist.cdf(map.invert(yb)) - dist.cdf(map.invert(ya)));
  return {direct, transformed};
}

}  // namespace plotpos
