#pragma once

#include <string>

#include "plotpos/beta.hpp"

namespace plotpos {

/// Standard normal CDF via the complementary error function.
double normal_cdf(double z);

/// Standard normal quantile: rational approximation (Acklam's coefficients)
/// polished with one Newton step against the erfc-based CDF. Accurate to
/// well below 1e-10 in probability.
double normal_quantile(double p);

// A small family of continuous distributions with evaluable CDF, quantile
// and mean. Covers what the loss functionals and the CLI need.
class Distribution {
 public:
  enum class Family { Uniform, Normal, Exponential, Beta };

  static Distribution uniform();  // U(0, 1)
  static Distribution normal(double mean, double stddev);      // stddev > 0
  static Distribution exponential(double rate);                // rate > 0
  static Distribution beta(const BetaParams& params);

  Family family() const { return family_; }
  std::string name() const;

  double cdf(double x) const;
  double quantile(double p) const;  // p in (0,1)
  double mean() const;

 private:
  Distribution(Family family, double p1, double p2);

  Family family_;
  double p1_;
  double p2_;
};

}  // namespace plotpos
