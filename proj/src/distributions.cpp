#include "plotpos/distributions.hpp"

#include <cmath>
#include <numbers>

namespace plotpos {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kNormalPdfNorm = 1.0 / std::sqrt(2.0 * std::numbers::pi);

// Acklam's rational approximation to the standard normal quantile,
// relative error below 1.2e-9 before polishing.
double normal_quantile_estimate(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double normal_quantile(double p) {
  if (!(std::isfinite(p) && p > 0.0 && p < 1.0)) {
    throw std::domain_error("normal quantile level p must lie in (0, 1)");
  }
  double z = normal_quantile_estimate(p);
  const double pdf = kNormalPdfNorm * std::exp(-0.5 * z * z);
  if (pdf > 0.0) z -= (normal_cdf(z) - p) / pdf;  // one Newton polish
  return z;
}

Distribution::Distribution(Family family, double p1, double p2)
    : family_(family), p1_(p1), p2_(p2) {}

Distribution Distribution::uniform() { return Distribution(Family::Uniform, 0.0, 1.0); }

Distribution Distribution::normal(double mean, double stddev) {
  if (!(std::isfinite(mean)) || !(std::isfinite(stddev) && stddev > 0.0)) {
    throw std::domain_error("normal distribution requires finite mean and stddev > 0");
  }
  return Distribution(Family::Normal, mean, stddev);
}

Distribution Distribution::exponential(double rate) {
  if (!(std::isfinite(rate) && rate > 0.0)) {
    throw std::domain_error("exponential distribution requires rate > 0");
  }
  return Distribution(Family::Exponential, rate, 0.0);
}

Distribution Distribution::beta(const BetaParams& params) {
  return Distribution(Family::Beta, params.alpha, params.beta);
}

std::string Distribution::name() const {
  switch (family_) {
    case Family::Uniform:
      return "uniform(0,1)";
    case Family::Normal:
      return "normal(mean=" + std::to_string(p1_) + ",stddev=" + std::to_string(p2_) + ")";
    case Family::Exponential:
      return "exponential(rate=" + std::to_string(p1_) + ")";
    case Family::Beta:
      return "beta(alpha=" + std::to_string(p1_) + ",beta=" + std::to_string(p2_) + ")";
  }
  return "unknown";
}

double Distribution::cdf(double x) const {
  if (std::isnan(x)) throw std::domain_error("CDF argument must not be NaN");
  switch (family_) {
    case Family::Uniform:
      if (x <= 0.0) return 0.0;
      return x >= 1.0 ? 1.0 : x;
    case Family::Normal:
      return normal_cdf((x - p1_) / p2_);
    case Family::Exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-p1_ * x);
    case Family::Beta:
      if (x <= 0.0) return 0.0;
      if (x >= 1.0) return 1.0;
      return beta_cdf(BetaParams(p1_, p2_), x);
  }
  return 0.0;
}

double Distribution::quantile(double p) const {
  if (!(std::isfinite(p) && p > 0.0 && p < 1.0)) {
    throw std::domain_error("quantile level p must lie in (0, 1)");
  }
  switch (family_) {
    case Family::Uniform:
      return p;
    case Family::Normal:
      return p1_ + p2_ * normal_quantile(p);
    case Family::Exponential:
      return -std::log1p(-p) / p1_;
    case Family::Beta:
      return beta_quantile_newton(BetaParams(p1_, p2_), p);
  }
  return 0.0;
}

double Distribution::mean() const {
  switch (family_) {
    case Family::Uniform:
      return 0.5;
    case Family::Normal:
      return p1_;
    case Family::Exponential:
      return 1.0 / p1_;
    case Family::Beta:
      return p1_ / (p1_ + p2_);
  }
  return 0.0;
}

}  // namespace plotpos
