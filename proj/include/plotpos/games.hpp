#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plotpos/beta.hpp"

namespace plotpos {

// Counter-based per-trial random stream: the draws of trial t depend only on
// (seed, t), so results are independent of how trials are distributed over
// worker threads. SplitMix64 stream from a hashed (seed, trial) start point.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();
  double next_open01();  // uniform on the open interval (0, 1)

 private:
  std::uint64_t state_;
};

// Configuration for one betting game between players A and B who each
// committed to a plotting position for the i-th order statistic.
struct GameSpec {
  int game_id;  // 1..4
  OrderStatIndex idx;
  double p_a;
  double p_b;
  std::uint64_t trials;
  std::uint64_t seed;

  GameSpec(int game_id_, OrderStatIndex idx_, double p_a_, double p_b_, std::uint64_t trials_,
           std::uint64_t seed_);
};

struct GameReport {
  std::uint64_t wins_a = 0;
  std::uint64_t wins_b = 0;
  std::uint64_t draws = 0;
  double mean_payoff_a = 0.0;  // dollars per trial, A's point of view
  double std_error = 0.0;
  std::optional<double> analytic_payoff_a;
};

enum class Game4Mode {
  AnalyticConditional,  // decide each trial by the exact conditional probability
  Rejection,            // judge keeps drawing until a draw lands in exactly one interval
};

// Game 1: closest position to the realized U_(i) wins a dollar; exact ties go
// to B.
GameReport simulate_game1(const GameSpec& spec, unsigned workers = 1);

// Game 2: A receives |U_(i) - p_b| - |U_(i) - p_a| dollars.
GameReport simulate_game2(const GameSpec& spec, unsigned workers = 1);

// Game 3: A receives (U_(i) - p_b)^2 - (U_(i) - p_a)^2 dollars.
GameReport simulate_game3(const GameSpec& spec, unsigned workers = 1);

// Game 4: a judge draws fresh uniforms until one falls between exactly one
// player's position and U_(i); that player loses the dollar. Trials whose
// interval symmetric difference is empty are draws, as are rejection-mode
// trials that reach the cap undecided.
GameReport simulate_game4(const GameSpec& spec, Game4Mode mode = Game4Mode::AnalyticConditional,
                          std::uint64_t rejection_cap = 10000, unsigned workers = 1);

/// Dispatch on spec.game_id. Mode and cap apply to game 4 only.
GameReport simulate_game(const GameSpec& spec, Game4Mode mode = Game4Mode::AnalyticConditional,
                         std::uint64_t rejection_cap = 10000, unsigned workers = 1);

// Exact expected payoffs per trial for player A.
double game1_analytic_payoff(const OrderStatIndex& idx, double p_a, double p_b);
double game2_analytic_payoff(const OrderStatIndex& idx, double p_a, double p_b);
double game3_analytic_payoff(const OrderStatIndex& idx, double p_a, double p_b);
double game4_analytic_payoff(const OrderStatIndex& idx, double p_a, double p_b);

/// i.i.d. draws of U_(i) ~ Beta(i, n+1-i) via the inverse-CDF transform.
std::vector<double> order_stat_sampler(const OrderStatIndex& idx, std::uint64_t count,
                                       std::uint64_t seed);

}  // namespace plotpos
