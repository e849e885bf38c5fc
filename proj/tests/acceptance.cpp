// Acceptance suite: runs every gate criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exit code is the failure count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "plotpos/compare.hpp"
#include "plotpos/games.hpp"
#include "plotpos/loss.hpp"
#include "plotpos/positions.hpp"

using plotpos::BetaParams;
using plotpos::GameSpec;
using plotpos::MedianEngine;
using plotpos::OrderStatIndex;
using plotpos::PIV;

namespace {

struct Failure {
  std::string detail;
};

struct Context {
  std::vector<std::string> details;
  bool ok = true;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (details.size() < 12) details.push_back(what);
    }
  }
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

// ---- criterion 1: published small-n table ------------------------------

struct PrintedCell {
  const char* method;
  int n;
  int i;
  double log_p;
};

const std::vector<PrintedCell>& printed_table() {
  static const std::vector<PrintedCell> cells = {
      {"exact", 2, 1, -1.228},  {"exact", 3, 1, -1.578},  {"exact", 4, 1, -1.838},
      {"exact", 4, 2, -0.9526}, {"exact", 5, 1, -2.044},  {"exact", 5, 2, -1.159},
      {"cran", 2, 1, -1.228},   {"cran", 3, 1, -1.578},   {"cran", 4, 1, -1.838},
      {"cran", 4, 2, -0.9526},  {"cran", 5, 1, -2.044},   {"cran", 5, 2, -1.159},
      {"erto", 2, 1, -1.228},   {"erto", 3, 1, -1.578},   {"erto", 4, 1, -1.838},
      {"erto", 4, 2, -0.9510},  {"erto", 5, 1, -2.044},   {"erto", 5, 2, -1.156},
      {"log-e-over-2", 2, 1, -1.236}, {"log-e-over-2", 3, 1, -1.586},
      {"log-e-over-2", 4, 1, -1.845}, {"log-e-over-2", 4, 2, -0.9519},
      {"log-e-over-2", 5, 1, -2.050}, {"log-e-over-2", 5, 2, -1.157},
      {"kerman", 2, 1, -1.253}, {"kerman", 3, 1, -1.609}, {"kerman", 4, 1, -1.872},
      {"kerman", 4, 2, -0.9555}, {"kerman", 5, 1, -2.079}, {"kerman", 5, 2, -1.163},
  };
  return cells;
}

void criterion1(Context& ctx) {
  const auto cells = plotpos::reproduce_table1();
  ctx.require(cells.size() == 30, "expected 30 table cells");
  int checked = 0;
  for (const PrintedCell& printed : printed_table()) {
    for (const plotpos::TableCell& cell : cells) {
      if (cell.method == printed.method && cell.n == printed.n && cell.i == printed.i) {
        ++checked;
        ctx.require(std::fabs(cell.log_p - printed.log_p) <= 5e-4,
                    std::string(printed.method) + " n=" + std::to_string(printed.n) +
                        " i=" + std::to_string(printed.i) +
                        fmt(": log %.6f vs printed %.4f", cell.log_p, printed.log_p));
      }
    }
  }
  ctx.require(checked == 30, "did not match all 30 printed cells");
}

// ---- criterion 2: closed-form tails ------------------------------------

void criterion2(Context& ctx) {
  std::vector<int> sizes;
  for (int n = 1; n <= 100; ++n) sizes.push_back(n);
  sizes.push_back(1000);
  sizes.push_back(10000);
  sizes.push_back(1000000);
  for (int n : sizes) {
    const double first = plotpos::tail_median(n, plotpos::Tail::First);
    const double last = plotpos::tail_median(n, plotpos::Tail::Last);
    const double bis_first = plotpos::beta_median_bisection(OrderStatIndex(n, 1));
    const double bis_last = plotpos::beta_median_bisection(OrderStatIndex(n, n));
    ctx.require(std::fabs(bis_first - first) <= 1e-10,
                fmt("first median off by %.3g at n=%.0f", bis_first - first, n));
    ctx.require(std::fabs(bis_last - last) <= 1e-10,
                fmt("last median off by %.3g at n=%.0f", bis_last - last, n));
  }
}

// ---- criterion 3: solver cross-validation and the CDF identity ---------

void criterion3(Context& ctx) {
  for (int n = 1; n <= 300; ++n) {
    for (int i = 1; i <= n; ++i) {
      const OrderStatIndex idx(n, i);
      const double bis = plotpos::beta_median_bisection(idx);
      const double newton = plotpos::beta_quantile_newton(idx.beta_params(), 0.5);
      if (std::fabs(bis - newton) > 1e-10) {
        ctx.require(false, fmt("solvers disagree by %.3g at n=%.0f i=%.0f",
                               std::fabs(bis - newton), n, i));
      }
    }
  }
  for (int n = 1; n <= 50; ++n) {
    for (int i = 1; i <= n; ++i) {
      for (int k = 0; k <= 100; ++k) {
        const double u = k / 100.0;
        const double direct = plotpos::order_stat_cdf(OrderStatIndex(n, i), u);
        const double via_beta = plotpos::beta_cdf(BetaParams(i, n - i + 1.0), u);
        if (std::fabs(direct - via_beta) > 1e-12) {
          ctx.require(false, fmt("CDF identity off by %.3g at n=%.0f i=%.0f",
                                 std::fabs(direct - via_beta), n, i));
        }
      }
    }
  }
}

// ---- criterion 4: comparison-theorem sweep ------------------------------

void criterion4(Context& ctx) {
  std::vector<int> sizes;
  for (int n = 3; n <= 200; ++n) sizes.push_back(n);
  sizes.push_back(500);
  sizes.push_back(1000);
  sizes.push_back(5000);
  for (int n : sizes) {
    const plotpos::ComparisonReport report = plotpos::comparison_report(n);
    for (char item = 'a'; item <= 'i'; ++item) {
      const plotpos::CheckResult& check = report.checks.at(item);
      if (!check.pass) {
        ctx.require(false, fmt("check failed at n=%.0f", double(n)) + ": item " + item +
                               fmt(" margin %.3g", check.margin));
      }
    }
  }
}

// ---- criterion 5: tail-ratio limit --------------------------------------

void criterion5(Context& ctx) {
  const auto rows = plotpos::tail_ratio_limit({1000000});
  ctx.require(std::fabs(rows.front().ratio_first - std::numbers::ln2) < 1e-4,
              fmt("ratio %.8f vs log2 %.8f", rows.front().ratio_first, std::numbers::ln2));
  ctx.require(std::fabs(rows.front().complement_ratio_last - std::numbers::ln2) < 1e-4,
              fmt("complement ratio %.8f vs log2 %.8f", rows.front().complement_ratio_last,
                  std::numbers::ln2));
}

// ---- criterion 6: EPL minimizer and the FPL identity ---------------------

void criterion6(Context& ctx) {
  const int grid = 2001;
  for (int n = 1; n <= 30; ++n) {
    for (int i = 1; i <= n; ++i) {
      const OrderStatIndex idx(n, i);
      int argmin = 1;
      double best = plotpos::expected_pl(idx, 1.0 / (grid + 1.0));
      for (int k = 2; k <= grid; ++k) {
        const double value = plotpos::expected_pl(idx, k / (grid + 1.0));
        if (value < best) {
          best = value;
          argmin = k;
        }
      }
      const double median = plotpos::epl_minimizer(idx);
      const int nearest = static_cast<int>(std::lround(median * (grid + 1.0)));
      if (std::abs(argmin - nearest) > 1) {
        ctx.require(false, fmt("grid argmin %.0f not adjacent to median index %.0f (n=%.0f)",
                               argmin, nearest, n));
      }
    }
  }
  for (int n = 1; n <= 50; ++n) {
    for (int i = 1; i <= n; ++i) {
      const OrderStatIndex idx(n, i);
      for (double p : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        const double gap = std::fabs(plotpos::fpl(idx, p) - plotpos::expected_pl(idx, p));
        if (gap > 1e-10) {
          ctx.require(false, fmt("FPL vs EPL gap %.3g at n=%.0f i=%.0f", gap, n, i));
        }
      }
    }
  }
}

// ---- criterion 7: game 1 Monte Carlo against the analytic probability ----

void criterion7(Context& ctx) {
  const std::uint64_t trials = 1000000;
  const struct {
    int n;
    int i;
  } tuples[] = {{2, 1}, {3, 2}, {5, 2}, {10, 3}};
  for (const auto& t : tuples) {
    const OrderStatIndex idx(t.n, t.i);
    const double p_a = plotpos::beta_median_bisection(idx);
    const double p_b = t.i / (t.n + 1.0);
    try {
      const GameSpec spec(1, idx, p_a, p_b, trials, 42);
      const plotpos::GameReport report = plotpos::simulate_game1(spec, 2);
      const double mid = 0.5 * (p_a + p_b);
      const double cdf_mid = plotpos::beta_cdf(idx.beta_params(), mid);
      const double win_prob = p_a < p_b ? cdf_mid : 1.0 - cdf_mid;
      const double rate = static_cast<double>(report.wins_a) / static_cast<double>(trials);
      const double se = std::sqrt(win_prob * (1.0 - win_prob) / static_cast<double>(trials));
      if (std::fabs(rate - win_prob) > 4.0 * se) {
        ctx.require(false, fmt("rate %.6f vs analytic %.6f beyond 4se at n=%.0f", rate, win_prob,
                               t.n));
      }
      if (!(rate > 0.5)) {
        ctx.require(false, fmt("rate %.6f does not exceed 0.5 at (n=%.0f, i=%.0f)", rate, t.n,
                               t.i));
      }
    } catch (const std::domain_error& e) {
      // (n,i) = (3,2): Beta(2,2) is symmetric, so its median IS the Weibull
      // position 1/2 and the prescribed game is degenerate by construction.
      ctx.require(false, "(" + std::to_string(t.n) + "," + std::to_string(t.i) +
                             "): positions coincide, game rejected: " + e.what());
    }
  }
}

// ---- criterion 8: game 3 mean-strategy optimality ------------------------

void criterion8(Context& ctx) {
  const struct {
    int n;
    int i;
  } tuples[] = {{2, 1}, {4, 2}, {5, 2}, {10, 3}};
  for (const auto& t : tuples) {
    const OrderStatIndex idx(t.n, t.i);
    const double mean = t.i / (t.n + 1.0);
    std::vector<double> challengers = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
    challengers.push_back(mean);
    for (double p_b : challengers) {
      const double payoff = plotpos::game3_analytic_payoff(idx, mean, p_b);
      ctx.require(payoff >= 0.0, fmt("negative payoff %.3g at n=%.0f", payoff, t.n));
      if (std::fabs(payoff) <= 1e-12) {
        ctx.require(p_b == mean, fmt("zero payoff against non-mean challenger %.3f (n=%.0f)",
                                     p_b, t.n));
      } else {
        ctx.require(p_b != mean, fmt("nonzero payoff %.3g against the mean itself (n=%.0f)",
                                     payoff, t.n));
      }
    }
  }
}

// ---- criterion 9: game 4 mode agreement ----------------------------------

void criterion9(Context& ctx) {
  const OrderStatIndex idx(5, 2);
  const double p_a = plotpos::beta_median_bisection(idx);
  const double p_b = 2.0 / 6.0;
  const std::uint64_t trials = 100000;
  const GameSpec spec(4, idx, p_a, p_b, trials, 1234);
  const plotpos::GameReport analytic =
      plotpos::simulate_game4(spec, plotpos::Game4Mode::AnalyticConditional, 10000, 2);
  const plotpos::GameReport rejection =
      plotpos::simulate_game4(spec, plotpos::Game4Mode::Rejection, 10000, 2);
  const double decided_a = static_cast<double>(analytic.wins_a + analytic.wins_b);
  const double decided_r = static_cast<double>(rejection.wins_a + rejection.wins_b);
  ctx.require(decided_a > 0 && decided_r > 0, "no decided trials");
  const double frac_a = static_cast<double>(analytic.wins_a) / decided_a;
  const double frac_r = static_cast<double>(rejection.wins_a) / decided_r;
  const double se = std::sqrt(frac_a * (1.0 - frac_a) / decided_a +
                              frac_r * (1.0 - frac_r) / decided_r);
  ctx.require(std::fabs(frac_a - frac_r) <= 4.0 * se,
              fmt("decided-trial win fractions %.5f vs %.5f beyond 4 combined se", frac_a,
                  frac_r));
}

// ---- criterion 10: command-line determinism across worker counts ---------

std::string run_cli_capture(const std::string& args, int& exit_code) {
  const std::string cmd = std::string(PLOTPOS_CLI_BIN) + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) {
    exit_code = -1;
    return {};
  }
  std::string output;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, got);
  const int status = pclose(pipe);
  exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return output;
}

void criterion10(Context& ctx) {
  const std::string base =
      "game --game 1 --n 5 --i 2 --pa 0.313810 --pb 0.333333 --trials 200000 --seed 42";
  int code = 0;
  const std::string once = run_cli_capture(base + " --workers 1", code);
  ctx.require(code == 0 && !once.empty(), "reference run failed");
  for (const char* workers : {" --workers 1", " --workers 2", " --workers 8"}) {
    const std::string repeat = run_cli_capture(base + workers, code);
    ctx.require(code == 0, std::string("run failed for") + workers);
    ctx.require(repeat == once, std::string("output differs for") + workers);
  }
}

// ---- criterion 11: method deviations across the figure positions ---------

void criterion11(Context& ctx) {
  for (int n = 50; n <= 150; n += 10) {
    const PIV exact = plotpos::beta_median_piv(n, MedianEngine::Bisection);
    const PIV cran = plotpos::beta_median_piv(n, MedianEngine::Newton);
    const PIV erto = plotpos::approx_piv(n, plotpos::PositionMethod::erto());
    const PIV loge = plotpos::approx_piv(n, plotpos::PositionMethod::log_e_over_2());
    const PIV kerman = plotpos::approx_piv(n, plotpos::PositionMethod::kerman());
    const int positions[] = {1, n / 10, 2 * n / 10, 4 * n / 10};

    auto dev = [&](const PIV& piv, int i) {
      return std::log(piv.at(i)) - std::log(exact.at(i));
    };

    for (int i : positions) {
      ctx.require(std::fabs(dev(cran, i)) <= 1e-8,
                  fmt("cran deviates %.3g at n=%.0f i=%.0f", dev(cran, i), n, i));
    }
    ctx.require(std::fabs(dev(erto, 1)) <= 0.01, fmt("erto tail dev %.3g at n=%.0f", dev(erto, 1), n));
    ctx.require(std::fabs(dev(loge, 1)) <= 0.01,
                fmt("log-e-over-2 tail dev %.3g at n=%.0f", dev(loge, 1), n));
    const int fifth = 2 * n / 10;
    ctx.require(std::fabs(dev(erto, fifth)) > std::fabs(dev(kerman, fifth)),
                fmt("erto dev %.3g not above kerman %.3g at n=%.0f", std::fabs(dev(erto, fifth)),
                    std::fabs(dev(kerman, fifth)), n));
    ctx.require(std::fabs(dev(loge, fifth)) > std::fabs(dev(kerman, fifth)),
                fmt("log-e-over-2 dev %.3g not above kerman %.3g at n=%.0f",
                    std::fabs(dev(loge, fifth)), std::fabs(dev(kerman, fifth)), n));
    const int two_fifths = 4 * n / 10;
    for (const PIV* piv : {&cran, &erto, &loge, &kerman}) {
      ctx.require(std::fabs(dev(*piv, two_fifths)) <= 0.005,
                  fmt("central dev %.3g at n=%.0f i=%.0f", dev(*piv, two_fifths), n, two_fifths));
    }
    // interior deviations sit above the exact value for the tail-calibrated shifts
    for (int i : {n / 10, fifth}) {
      ctx.require(dev(erto, i) > 0.0, fmt("erto below exact at n=%.0f i=%.0f", n, i));
      ctx.require(dev(loge, i) > 0.0, fmt("log-e-over-2 below exact at n=%.0f i=%.0f", n, i));
    }
  }
}

struct Criterion {
  int id;
  const char* title;
  double budget_seconds;  // 0 = untimed
  std::function<void(Context&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "published table of log positions reproduced to +-0.0005", 1.0, criterion1},
      {2, "closed-form tail medians matched to 1e-10 up to n = 1e6", 10.0, criterion2},
      {3, "bisection vs Newton to 1e-10 (n <= 300); CDF identity to 1e-12 (n <= 50)", 30.0,
       criterion3},
      {4, "comparison checks (a)-(i) pass for n in 3..200, 500, 1000, 5000", 60.0, criterion4},
      {5, "tail ratio within 1e-4 of log 2 at n = 1e6", 1.0, criterion5},
      {6, "EPL grid minimum adjacent to the median (n <= 30); FPL = EPL to 1e-10", 60.0,
       criterion6},
      {7, "game 1 Monte Carlo within 4 se of analytic and above 1/2", 60.0, criterion7},
      {8, "game 3 mean strategy dominates the challenger grid to 1e-12", 1.0, criterion8},
      {9, "game 4 analytic and rejection modes agree within 4 combined se", 30.0, criterion9},
      {10, "identical game tallies across 1, 2, 8 workers", 0.0, criterion10},
      {11, "figure positions: engine to 1e-8, shift-method deviation pattern", 60.0, criterion11},
  };

  int failures = 0;
  for (const Criterion& criterion : criteria) {
    Context ctx;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.run(ctx);
    } catch (const std::exception& e) {
      ctx.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criterion.budget_seconds > 0.0 && elapsed >= criterion.budget_seconds) {
      ctx.require(false, fmt("runtime %.2f s exceeds the %.0f s budget", elapsed,
                             criterion.budget_seconds));
    }
    std::printf("[%s] criterion %2d: %s (%.2f s)\n", ctx.ok ? "PASS" : "FAIL", criterion.id,
                criterion.title, elapsed);
    for (const std::string& detail : ctx.details) {
      std::printf("       - %s\n", detail.c_str());
    }
    if (!ctx.ok) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
