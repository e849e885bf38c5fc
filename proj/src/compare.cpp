#include "plotpos/compare.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>

#include "plotpos/distributions.hpp"

namespace plotpos {

namespace {

constexpr double kCenterEqualityTol = 1e-12;

// Tracks the smallest slack seen by a check; a check passes when every
// constituent inequality held, i.e. the worst margin stayed positive
// (or non-negative where equality is allowed).
struct MarginTracker {
  bool pass = true;
  double margin = std::numeric_limits<double>::infinity();

  void require(bool ok, double slack) {
    pass = pass && ok;
    margin = std::min(margin, slack);
  }
};

CheckResult finish(const MarginTracker& t, std::string note = {}) {
  CheckResult r;
  r.pass = t.pass;
  r.margin = std::isfinite(t.margin) ? t.margin : 0.0;
  r.note = std::move(note);
  return r;
}

const std::vector<std::pair<std::string, PositionMethod>>& table_methods() {
  static const std::vector<std::pair<std::string, PositionMethod>> methods = {
      {"exact", PositionMethod::beta_median_exact()},
      {"cran", PositionMethod::beta_median_cran()},
      {"erto", PositionMethod::erto()},
      {"log-e-over-2", PositionMethod::log_e_over_2()},
      {"kerman", PositionMethod::kerman()},
  };
  return methods;
}

void append_cells(std::vector<TableCell>& out, int n, const std::vector<int>& indices) {
  for (const auto& [name, method] : table_methods()) {
    const PIV piv = piv_for(n, method);
    for (int i : indices) {
      const double p = piv.at(i);
      out.push_back({name, n, i, p, std::log(p)});
    }
  }
}

}  // namespace

PaytonBound payton_gap_bound(const BetaParams& params) {
  const double a = params.alpha;
  const double b = params.beta;
  if (a == b) return {GapSign::Equal, 0.0};
  if (!(a > 1.0 && b > 1.0)) {
    throw std::domain_error("mean-median gap bound requires alpha, beta > 1 when they differ");
  }
  const double bound = std::fabs(a - b) / ((a + b) * (a + b - 2.0));
  return {a < b ? GapSign::MeanAbove : GapSign::MedianAbove, bound};
}

bool ComparisonReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const auto& kv) { return kv.second.pass; });
}

ComparisonReport comparison_report(int n, const SolverConfig& cfg) {
  if (n <= 2) throw std::domain_error("comparison requires n > 2");

  const PIV w = weibull_piv(n);
  const PIV b = beta_median_piv(n, MedianEngine::Bisection, cfg);

  ComparisonReport report;
  report.n = n;
  report.rows.reserve(static_cast<size_t>(n));
  for (int i = 1; i <= n; ++i) {
    ComparisonRow row;
    row.i = i;
    row.p_w = w.at(i);
    row.p_b = b.at(i);
    row.diff = row.p_w - row.p_b;
    row.bound_diff = std::fabs(n + 1.0 - 2.0 * i) / (n * n - 1.0);
    row.ratio = row.p_b / row.p_w;
    row.one_minus_ratio = (1.0 - row.p_b) / (1.0 - row.p_w);
    report.rows.push_back(row);
  }

  const int half = n / 2;
  const int center = (n % 2 == 1) ? (n + 1) / 2 : 0;  // 0 when there is none
  auto row = [&](int i) -> const ComparisonRow& { return report.rows[static_cast<size_t>(i - 1)]; };

  // a: mean above median on the lower half, gap below the Payton bound.
  // The i = 1 rank has alpha = 1, outside the bound's hypothesis, so the
  // closed-form tail median carries the check there.
  {
    MarginTracker t;
    const double p1_closed = tail_median(n, Tail::First);
    t.require(p1_closed > 0.0, p1_closed);
    t.require(p1_closed < row(1).p_w, row(1).p_w - p1_closed);
    for (int i = 2; i <= half; ++i) {
      t.require(row(i).diff > 0.0, row(i).diff);
      t.require(row(i).diff < row(i).bound_diff, row(i).bound_diff - row(i).diff);
    }
    report.checks['a'] = finish(t);
  }

  // b: reversed sign on the upper half (center excluded for odd n; c covers it).
  {
    MarginTracker t;
    for (int i = half + 1; i <= n; ++i) {
      if (i == center) continue;
      t.require(-row(i).diff > 0.0, -row(i).diff);
      t.require(-row(i).diff < row(i).bound_diff, row(i).bound_diff + row(i).diff);
    }
    report.checks['b'] = finish(t);
  }

  // c: exact agreement at the center for odd n.
  {
    MarginTracker t;
    if (center != 0) {
      t.require(std::fabs(row(center).diff) <= kCenterEqualityTol,
                kCenterEqualityTol - std::fabs(row(center).diff));
      report.checks['c'] = finish(t);
    } else {
      report.checks['c'] = finish(t, "n even: no center index");
    }
  }

  // d: uniform bound 1/(n+1) on the absolute gap.
  {
    MarginTracker t;
    const double bound = 1.0 / (n + 1.0);
    for (int i = 1; i <= n; ++i) {
      t.require(std::fabs(row(i).diff) < bound, bound - std::fabs(row(i).diff));
    }
    report.checks['d'] = finish(t);
  }

  // e: strict tail ordering.
  {
    MarginTracker t;
    t.require(row(1).p_b > 0.0, row(1).p_b);
    t.require(row(1).p_b < row(1).p_w, row(1).p_w - row(1).p_b);
    t.require(row(1).p_w < 1.0, 1.0 - row(1).p_w);
    t.require(row(n).p_w > 0.0, row(n).p_w);
    t.require(row(n).p_w < row(n).p_b, row(n).p_b - row(n).p_w);
    t.require(row(n).p_b < 1.0, 1.0 - row(n).p_b);
    report.checks['e'] = finish(t);
  }

  // f: the Beta median interleaves consecutive Weibull positions (lower half).
  {
    MarginTracker t;
    for (int i = 2; i <= half; ++i) {
      t.require(row(i - 1).p_w < row(i).p_b, row(i).p_b - row(i - 1).p_w);
      t.require(row(i).p_b < row(i).p_w, row(i).p_w - row(i).p_b);
    }
    report.checks['f'] = finish(t);
  }

  // g: mirrored interleaving on the upper half (center excluded for odd n).
  {
    MarginTracker t;
    for (int i = half + 1; i <= n - 1; ++i) {
      if (i == center) continue;
      t.require(row(i - 1).p_b < row(i).p_w, row(i).p_w - row(i - 1).p_b);
      t.require(row(i).p_w < row(i).p_b, row(i).p_b - row(i).p_w);
    }
    report.checks['g'] = finish(t);
  }

  // h: ratio bound |p^B/p^W - 1| < |n+1-2i|/(i(n-1)) <= 1/i. At the odd-n
  // center both the deviation and the bound are exactly zero.
  {
    MarginTracker t;
    for (int i = 1; i <= n; ++i) {
      const double dev = std::fabs(row(i).ratio - 1.0);
      const double bound = std::fabs(n + 1.0 - 2.0 * i) / (i * (n - 1.0));
      if (i == center) {
        t.require(dev <= kCenterEqualityTol, kCenterEqualityTol - dev);
      } else {
        t.require(dev < bound, bound - dev);
        t.require(bound <= 1.0 / i, 1.0 / i - bound);
      }
    }
    report.checks['h'] = finish(t);
  }

  // i: the same bound for the complements, with 1/(n-i) vacuous at i = n.
  {
    MarginTracker t;
    for (int i = 1; i <= n; ++i) {
      const double dev = std::fabs(row(i).one_minus_ratio - 1.0);
      const double bound = std::fabs(n + 1.0 - 2.0 * i) / ((n + 1.0 - i) * (n - 1.0));
      if (i == center) {
        t.require(dev <= kCenterEqualityTol, kCenterEqualityTol - dev);
      } else {
        t.require(dev < bound, bound - dev);
        if (i < n) t.require(bound <= 1.0 / (n - i), 1.0 / (n - i) - bound);
      }
    }
    report.checks['i'] = finish(t);
  }

  // j: finite-n witness of the common log(2) tail-ratio limit; the two
  // closed-form ratios also have to agree with each other.
  {
    MarginTracker t;
    const auto ratios = tail_ratio_limit({n});
    const double rf = ratios.front().ratio_first;
    const double rl = ratios.front().complement_ratio_last;
    t.require(std::fabs(rf - rl) <= 1e-12, 1e-12 - std::fabs(rf - rl));
    const double limit_tol = 1.0 / n;
    t.require(std::fabs(rf - std::numbers::ln2) < limit_tol,
              limit_tol - std::fabs(rf - std::numbers::ln2));
    t.require(std::fabs(rl - std::numbers::ln2) < limit_tol,
              limit_tol - std::fabs(rl - std::numbers::ln2));
    report.checks['j'] = finish(t);
  }

  return report;
}

std::vector<TailRatioRow> tail_ratio_limit(const std::vector<long long>& n_list) {
  if (n_list.empty()) throw std::domain_error("tail ratio requires at least one n");
  std::vector<TailRatioRow> rows;
  rows.reserve(n_list.size());
  for (long long n : n_list) {
    if (n < 1 || n > std::numeric_limits<int>::max()) {
      throw std::domain_error("tail ratio requires 1 <= n <= 2^31-1");
    }
    const int n_int = static_cast<int>(n);
    const double scale = static_cast<double>(n) + 1.0;  // 1/p_1^W = 1/(1 - p_n^W)
    const double first = tail_median(n_int, Tail::First) * scale;
    // 1 - p_n^B = 1 - 2^(-1/n): evaluated through the first-position median,
    // where expm1 keeps the complement accurate for large n.
    const double last = tail_median(n_int, Tail::First) * scale;
    rows.push_back({n, first, last});
  }
  return rows;
}

std::vector<TableCell> reproduce_table1() {
  std::vector<TableCell> cells;
  append_cells(cells, 2, {1});
  append_cells(cells, 3, {1});
  append_cells(cells, 4, {1, 2});
  append_cells(cells, 5, {1, 2});
  return cells;
}

std::vector<TableCell> figure1_data(const std::vector<int>& n_list,
                                    const std::vector<Fraction>& fractions, bool include_first) {
  std::vector<TableCell> cells;
  for (int n : n_list) {
    if (n < 1) throw std::domain_error("figure data requires n >= 1");
    std::set<int> positions;
    if (include_first) positions.insert(1);
    for (const Fraction& f : fractions) {
      if (f.num < 1 || f.den < 1) throw std::domain_error("fractions must be positive");
      const long long scaled = static_cast<long long>(n) * f.num;
      if (scaled % f.den != 0) {
        throw std::domain_error("fraction " + std::to_string(f.num) + "/" + std::to_string(f.den) +
                                " of n = " + std::to_string(n) +
                                " is not an integer position");
      }
      const long long i = scaled / f.den;
      if (i < 1 || i > n) {
        throw std::domain_error("fraction " + std::to_string(f.num) + "/" + std::to_string(f.den) +
                                " of n = " + std::to_string(n) + " falls outside 1..n");
      }
      positions.insert(static_cast<int>(i));
    }
    append_cells(cells, n, std::vector<int>(positions.begin(), positions.end()));
  }
  return cells;
}

std::vector<NonInvarianceRow> non_invariance_demo() {
  std::vector<NonInvarianceRow> rows;
  const Distribution uniform = Distribution::uniform();
  rows.push_back({uniform.name(), uniform.cdf(uniform.mean())});
  for (double rate : {0.5, 1.0, 2.0}) {
    const Distribution exp_dist = Distribution::exponential(rate);
    rows.push_back({exp_dist.name(), exp_dist.cdf(exp_dist.mean())});
  }
  return rows;
}

}  // namespace plotpos
