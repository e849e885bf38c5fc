#pragma once

#include <map>
#include <string>
#include <vector>

#include "plotpos/beta.hpp"
#include "plotpos/positions.hpp"

namespace plotpos {

enum class GapSign { MeanAbove, MedianAbove, Equal };

struct PaytonBound {
  GapSign sign;
  double bound;  // |alpha-beta| / ((alpha+beta)(alpha+beta-2)); 0 when equal
};

/// Payton's bound on the mean-median gap of Beta(alpha, beta):
/// the gap is strictly between 0 and the bound, with the mean above the
/// median when alpha < beta and below when alpha > beta; the two coincide
/// when alpha = beta. Requires alpha, beta > 1 unless alpha = beta.
PaytonBound payton_gap_bound(const BetaParams& params);

struct ComparisonRow {
  int i;
  double p_w;              // Weibull position i/(n+1)
  double p_b;              // Beta-median position
  double diff;             // p_w - p_b
  double bound_diff;       // |n+1-2i| / (n^2-1)
  double ratio;            // p_b / p_w
  double one_minus_ratio;  // (1-p_b) / (1-p_w)
};

struct CheckResult {
  bool pass = false;
  double margin = 0.0;  // smallest slack over the indices the check covers
  std::string note;
};

// Per-n comparison of the Weibull and Beta-median position vectors, with the
// ten bound/ordering checks keyed 'a'..'j':
//   a: 0 < p_i^W - p_i^B < |n+1-2i|/(n^2-1) on the lower half (closed-form
//      tail median used for i = 1, where the Payton hypothesis fails)
//   b: reversed sign on the upper half
//   c: equality at the center index for odd n
//   d: |p_i^W - p_i^B| < 1/(n+1) everywhere
//   e: tail ordering 0 < p_1^B < p_1^W and p_n^W < p_n^B < 1
//   f: interleaving p_{i-1}^W < p_i^B < p_i^W on the lower half
//   g: mirrored interleaving on the upper half
//   h: |p_i^B/p_i^W - 1| < |n+1-2i|/(i(n-1)) <= 1/i
//   i: complement ratio bound |.| < |n+1-2i|/((n+1-i)(n-1)) <= 1/(n-i)
//   j: the two tail ratios agree and lie within 1/n of log 2
// For odd n the strict checks skip the center index, where c asserts
// equality instead.
struct ComparisonReport {
  int n = 0;
  std::vector<ComparisonRow> rows;
  std::map<char, CheckResult> checks;

  bool all_pass() const;
};

ComparisonReport comparison_report(int n, const SolverConfig& cfg = {});

struct TailRatioRow {
  long long n;
  double ratio_first;            // p_1^B / p_1^W = (1 - 2^(-1/n)) (n+1)
  double complement_ratio_last;  // (1 - p_n^B) / (1 - p_n^W)
};

/// Closed-form tail ratios; both columns converge to log 2.
std::vector<TailRatioRow> tail_ratio_limit(const std::vector<long long>& n_list);

struct TableCell {
  std::string method;  // exact | cran | erto | log-e-over-2 | kerman
  int n;
  int i;
  double p;
  double log_p;
};

/// Natural-log plotting positions of the five methods for n = 2..5,
/// lower-half indices (the odd-n center is omitted).
std::vector<TableCell> reproduce_table1();

// Exact fraction i/n of a position within the sample, e.g. 1/10 for the
// tenth-percentile position.
struct Fraction {
  long long num;
  long long den;
};

/// Log positions of the five methods at the fractional positions f*n for
/// each n. Every fraction must land on an integer position; include_first
/// adds position 1. Duplicated positions are emitted once.
std::vector<TableCell> figure1_data(const std::vector<int>& n_list,
                                    const std::vector<Fraction>& fractions,
                                    bool include_first = true);

struct NonInvarianceRow {
  std::string distribution;
  double cdf_at_mean;  // F(E{X})
};

/// F(E{X}) across distribution families: 1/2 for the uniform but
/// 1 - e^(-1) for every exponential, so positions defined through the CDF
/// of the mean depend on the distribution.
std::vector<NonInvarianceRow> non_invariance_demo();

}  // namespace plotpos
