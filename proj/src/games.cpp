#include "plotpos/games.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "plotpos/loss.hpp"

namespace plotpos {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Trials are aggregated in fixed-size blocks; each block is summed
// sequentially and block sums are reduced in index order afterwards, so the
// report is bit-identical for any worker count.
constexpr std::uint64_t kBlockSize = 16384;

struct BlockTally {
  std::uint64_t wins_a = 0;
  std::uint64_t wins_b = 0;
  std::uint64_t draws = 0;
  double payoff_sum = 0.0;
  double payoff_sq_sum = 0.0;
};

struct Trial {
  double payoff;
  int outcome;  // +1 A wins, -1 B wins, 0 draw
};

// Inverse-CDF sampling context for U_(i); the log-Beta normalizer is
// computed once per simulation.
struct OrderStatSampler {
  double a;
  double b;
  SolverConfig cfg{};

  explicit OrderStatSampler(const OrderStatIndex& idx)
      : a(idx.i), b(idx.n - idx.i + 1.0) {}

  double operator()(TrialRng& rng) const {
    return beta_quantile_newton(BetaParams(a, b), rng.next_open01(), cfg);
  }
};

template <class TrialFn>
GameReport run_trials(const GameSpec& spec, unsigned workers, TrialFn&& trial_fn) {
  if (workers < 1) workers = 1;
  const std::uint64_t trials = spec.trials;
  const std::uint64_t block_count = (trials + kBlockSize - 1) / kBlockSize;
  std::vector<BlockTally> blocks(block_count);

  std::atomic<std::uint64_t> next_block{0};
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t blk = next_block.fetch_add(1, std::memory_order_relaxed);
      if (blk >= block_count) return;
      BlockTally tally;
      const std::uint64_t begin = blk * kBlockSize;
      const std::uint64_t end = std::min(begin + kBlockSize, trials);
      for (std::uint64_t t = begin; t < end; ++t) {
        TrialRng rng(spec.seed, t);
        const Trial r = trial_fn(rng);
        if (r.outcome > 0) {
          ++tally.wins_a;
        } else if (r.outcome < 0) {
          ++tally.wins_b;
        } else {
          ++tally.draws;
        }
        tally.payoff_sum += r.payoff;
        tally.payoff_sq_sum += r.payoff * r.payoff;
      }
      blocks[blk] = tally;
    }
  };

  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  GameReport report;
  double sum = 0.0;
  double sq_sum = 0.0;
  for (const BlockTally& tally : blocks) {
    report.wins_a += tally.wins_a;
    report.wins_b += tally.wins_b;
    report.draws += tally.draws;
    sum += tally.payoff_sum;
    sq_sum += tally.payoff_sq_sum;
  }
  const double n = static_cast<double>(trials);
  report.mean_payoff_a = sum / n;
  if (trials > 1) {
    const double var = std::max(0.0, (sq_sum - n * report.mean_payoff_a * report.mean_payoff_a) /
                                         (n - 1.0));
    report.std_error = std::sqrt(var / n);
  }
  return report;
}

// Symmetric-difference lengths of the two betting intervals, both of which
// share the endpoint u.
struct IntervalSplit {
  double only_a;
  double only_b;
};

IntervalSplit interval_split(double u, double p_a, double p_b) {
  const double a_lo = std::min(u, p_a);
  const double a_hi = std::max(u, p_a);
  const double b_lo = std::min(u, p_b);
  const double b_hi = std::max(u, p_b);
  const double overlap = std::max(0.0, std::min(a_hi, b_hi) - std::max(a_lo, b_lo));
  return {(a_hi - a_lo) - overlap, (b_hi - b_lo) - overlap};
}

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : state_(mix64(mix64(seed ^ 0xD1B54A32D192ED03ULL) ^ mix64(trial + kGolden))) {}

std::uint64_t TrialRng::next_u64() {
  state_ += kGolden;
  return mix64(state_);
}

double TrialRng::next_open01() {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

GameSpec::GameSpec(int game_id_, OrderStatIndex idx_, double p_a_, double p_b_,
                   std::uint64_t trials_, std::uint64_t seed_)
    : game_id(game_id_), idx(idx_), p_a(p_a_), p_b(p_b_), trials(trials_), seed(seed_) {
  if (game_id < 1 || game_id > 4) throw std::domain_error("game id must be 1..4");
  if (!(std::isfinite(p_a) && p_a > 0.0 && p_a < 1.0) ||
      !(std::isfinite(p_b) && p_b > 0.0 && p_b < 1.0)) {
    throw std::domain_error("positions p_a and p_b must lie in (0, 1)");
  }
  if (p_a == p_b) throw std::domain_error("positions p_a and p_b must differ");
  if (trials < 1) throw std::domain_error("trials must be at least 1");
}

GameReport simulate_game1(const GameSpec& spec, unsigned workers) {
  if (spec.game_id != 1) throw std::domain_error("spec.game_id must be 1");
  const OrderStatSampler sample(spec.idx);
  GameReport report = run_trials(spec, workers, [&](TrialRng& rng) -> Trial {
    const double u = sample(rng);
    // Ties in distance pay B.
    const bool a_wins = std::fabs(u - spec.p_a) < std::fabs(u - spec.p_b);
    return {a_wins ? 1.0 : -1.0, a_wins ? 1 : -1};
  });
  report.analytic_payoff_a = game1_analytic_payoff(spec.idx, spec.p_a, spec.p_b);
  return report;
}

GameReport simulate_game2(const GameSpec& spec, unsigned workers) {
  if (spec.game_id != 2) throw std::domain_error("spec.game_id must be 2");
  const OrderStatSampler sample(spec.idx);
  GameReport report = run_trials(spec, workers, [&](TrialRng& rng) -> Trial {
    const double u = sample(rng);
    const double payoff = std::fabs(u - spec.p_b) - std::fabs(u - spec.p_a);
    return {payoff, payoff > 0.0 ? 1 : payoff < 0.0 ? -1 : 0};
  });
  report.analytic_payoff_a = game2_analytic_payoff(spec.idx, spec.p_a, spec.p_b);
  return report;
}

GameReport simulate_game3(const GameSpec& spec, unsigned workers) {
  if (spec.game_id != 3) throw std::domain_error("spec.game_id must be 3");
  const OrderStatSampler sample(spec.idx);
  GameReport report = run_trials(spec, workers, [&](TrialRng& rng) -> Trial {
    const double u = sample(rng);
    const double da = u - spec.p_a;
    const double db = u - spec.p_b;
    const double payoff = db * db - da * da;
    return {payoff, payoff > 0.0 ? 1 : payoff < 0.0 ? -1 : 0};
  });
  report.analytic_payoff_a = game3_analytic_payoff(spec.idx, spec.p_a, spec.p_b);
  return report;
}

GameReport simulate_game4(const GameSpec& spec, Game4Mode mode, std::uint64_t rejection_cap,
                          unsigned workers) {
  if (spec.game_id != 4) throw std::domain_error("spec.game_id must be 4");
  if (mode == Game4Mode::Rejection && rejection_cap < 1) {
    throw std::domain_error("rejection cap must be at least 1");
  }
  const OrderStatSampler sample(spec.idx);

  auto analytic_trial = [&](TrialRng& rng) -> Trial {
    const double u = sample(rng);
    const IntervalSplit split = interval_split(u, spec.p_a, spec.p_b);
    const double denom = split.only_a + split.only_b;
    if (denom <= 0.0) return {0.0, 0};
    const bool a_loses = rng.next_open01() < split.only_a / denom;
    return {a_loses ? -1.0 : 1.0, a_loses ? -1 : 1};
  };

  auto rejection_trial = [&](TrialRng& rng) -> Trial {
    const double u = sample(rng);
    const double a_lo = std::min(u, spec.p_a);
    const double a_hi = std::max(u, spec.p_a);
    const double b_lo = std::min(u, spec.p_b);
    const double b_hi = std::max(u, spec.p_b);
    for (std::uint64_t k = 0; k < rejection_cap; ++k) {
      const double x = rng.next_open01();
      const bool in_a = x > a_lo && x < a_hi;
      const bool in_b = x > b_lo && x < b_hi;
      if (in_a != in_b) return in_a ? Trial{-1.0, -1} : Trial{1.0, 1};
    }
    return {0.0, 0};  // undecided at the cap
  };

  GameReport report =
      mode == Game4Mode::AnalyticConditional
          ? run_trials(spec, workers, analytic_trial)
          : run_trials(spec, workers, rejection_trial);
  report.analytic_payoff_a = game4_analytic_payoff(spec.idx, spec.p_a, spec.p_b);
  return report;
}

GameReport simulate_game(const GameSpec& spec, Game4Mode mode, std::uint64_t rejection_cap,
                         unsigned workers) {
  switch (spec.game_id) {
    case 1:
      return simulate_game1(spec, workers);
    case 2:
      return simulate_game2(spec, workers);
    case 3:
      return simulate_game3(spec, workers);
    default:
      return simulate_game4(spec, mode, rejection_cap, workers);
  }
}

double game1_analytic_payoff(const OrderStatIndex& idx, double p_a, double p_b) {
  // A wins when U_(i) lands on A's side of the midpoint.
  const double mid = 0.5 * (p_a + p_b);
  const double cdf_mid = beta_cdf(idx.beta_params(), mid);
  const double win_prob = p_a < p_b ? cdf_mid : 1.0 - cdf_mid;
  return 2.0 * win_prob - 1.0;
}

double game2_analytic_payoff(const OrderStatIndex& idx, double p_a, double p_b) {
  return expected_pl(idx, p_b) - expected_pl(idx, p_a);
}

double game3_analytic_payoff(const OrderStatIndex& idx, double p_a, double p_b) {
  // E(U-p)^2 = Var(U) + (mu-p)^2; the variances cancel.
  const double mu = idx.i / (idx.n + 1.0);
  const double da = mu - p_a;
  const double db = mu - p_b;
  return db * db - da * da;
}

double game4_analytic_payoff(const OrderStatIndex& idx, double p_a, double p_b) {
  if (p_a > p_b) return -game4_analytic_payoff(idx, p_b, p_a);
  // For p_a < p_b: payoff is +1 below p_a, -1 above p_b, and
  // (p_a + p_b - 2u)/(p_b - p_a) in between; integrate against the
  // order-statistic law using the partial first moment.
  const double a = idx.i;
  const double b = idx.n - idx.i + 1.0;
  const double mu = a / (a + b);
  const double cdf_a = beta_cdf(BetaParams(a, b), p_a);
  const double cdf_b = beta_cdf(BetaParams(a, b), p_b);
  const double moment_a = mu * beta_cdf(BetaParams(a + 1.0, b), p_a);
  const double moment_b = mu * beta_cdf(BetaParams(a + 1.0, b), p_b);
  const double middle =
      ((p_a + p_b) * (cdf_b - cdf_a) - 2.0 * (moment_b - moment_a)) / (p_b - p_a);
  return cdf_a - (1.0 - cdf_b) + middle;
}

std::vector<double> order_stat_sampler(const OrderStatIndex& idx, std::uint64_t count,
                                       std::uint64_t seed) {
  if (count < 1) throw std::domain_error("sample count must be at least 1");
  const OrderStatSampler sample(idx);
  std::vector<double> values;
  values.reserve(count);
  for (std::uint64_t t = 0; t < count; ++t) {
    TrialRng rng(seed, t);
    values.push_back(sample(rng));
  }
  return values;
}

}  // namespace plotpos
