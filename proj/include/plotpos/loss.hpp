#pragma once

#include <utility>

#include "plotpos/beta.hpp"
#include "plotpos/distributions.hpp"

namespace plotpos {

/// Probability loss between two points on the scale of a continuous
/// distribution: |F(b) - F(a)|. Symmetric; invariant under strictly
/// monotone transformations of the data and the distribution.
double probability_loss(const Distribution& dist, double a, double b);

/// Expected probability loss between the i-th order statistic and the
/// candidate quantile level p: E|U_(i) - p| with U_(i) ~ Beta(i, n+1-i).
/// Closed form through the incomplete beta function.
double expected_pl(const OrderStatIndex& idx, double p);

/// Future-value probability loss: the probability that a fresh draw falls
/// between the i-th order statistic and the p-quantile. Equals expected_pl
/// analytically; evaluated here by quadrature of the order-statistic CDF so
/// the two routes stay numerically independent.
double fpl(const OrderStatIndex& idx, double p);

/// The p minimizing expected_pl(idx, p): the Beta(i, n+1-i) median.
double epl_minimizer(const OrderStatIndex& idx, const SolverConfig& cfg = {});

// Fixed catalog of strictly increasing maps used to exercise the invariance
// of the probability loss.
class MonotoneMap {
 public:
  enum class Kind { Affine, Exp, InverseLogit };

  static MonotoneMap affine(double slope, double intercept);  // slope > 0
  static MonotoneMap exp_map();        // x -> e^x
  static MonotoneMap inverse_logit();  // x -> 1/(1+e^-x)

  Kind kind() const { return kind_; }
  double apply(double x) const;
  double invert(double y) const;

 private:
  MonotoneMap(Kind kind, double slope, double intercept);

  Kind kind_;
  double slope_;
  double intercept_;
};

/// Evaluates the loss on both sides of a monotone change of variables:
/// (delta_X(a, b), delta_phi(X)(phi(a), phi(b))). The two coordinates agree
/// to roundoff for every map in the catalog.
std::pair<double, double> pl_invariance_pair(const Distribution& dist, const MonotoneMap& map,
                                             double a, double b);

}  // namespace plotpos
