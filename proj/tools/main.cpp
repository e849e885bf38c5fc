#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "plotpos/compare.hpp"
#include "plotpos/distributions.hpp"
#include "plotpos/games.hpp"
#include "plotpos/loss.hpp"
#include "plotpos/positions.hpp"

namespace {

using nlohmann::json;

// Exit codes: 0 success / all checks pass, 1 a requested check failed,
// 2 usage or domain error, 3 solver failure, 4 I/O or parse failure.
constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OutputOptions {
  std::string format = "csv";
  int digits = 17;
};

std::string fmt(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", std::clamp(digits, 1, 17), v);
  return buf;
}

void emit(const std::string& line) { std::cout << line << "\n"; }

plotpos::PositionMethod parse_method(const std::string& name, std::optional<double> shift,
                                     double tol) {
  plotpos::SolverConfig cfg;
  cfg.abs_tol = tol;
  if (name == "weibull") return plotpos::PositionMethod::weibull();
  if (name == "beta-median") return plotpos::PositionMethod::beta_median_exact(cfg);
  if (name == "cran" || name == "beta-median-cran") {
    return plotpos::PositionMethod::beta_median_cran(cfg);
  }
  if (name == "erto") return plotpos::PositionMethod::erto();
  if (name == "kerman") return plotpos::PositionMethod::kerman();
  if (name == "log-e-over-2") return plotpos::PositionMethod::log_e_over_2();
  if (name == "const-a") {
    if (!shift) throw std::domain_error("method const-a requires --a");
    return plotpos::PositionMethod::constant_a(*shift);
  }
  throw std::domain_error("unknown method '" + name +
                          "' (expected weibull, beta-median, cran, erto, kerman, "
                          "log-e-over-2 or const-a)");
}

plotpos::Fraction parse_fraction(const std::string& text) {
  const auto bad = [&] { return std::domain_error("cannot parse fraction '" + text + "'"); };
  const auto digits_only = [](const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
      return std::isdigit(c) != 0;
    });
  };
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) throw bad();
    return {std::stoll(num), std::stoll(den)};
  }
  if (const auto dot = text.find('.'); dot != std::string::npos) {
    const std::string whole = text.substr(0, dot);
    const std::string frac = text.substr(dot + 1);
    if (!digits_only(frac) || (!whole.empty() && !digits_only(whole))) throw bad();
    long long den = 1;
    for (size_t k = 0; k < frac.size(); ++k) den *= 10;
    const long long whole_part = whole.empty() ? 0 : std::stoll(whole);
    return {whole_part * den + std::stoll(frac), den};
  }
  if (!digits_only(text)) throw bad();
  return {std::stoll(text), 1};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string current;
  for (char c : text) {
    if (c == sep) {
      parts.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  parts.push_back(current);
  return parts;
}

// ---- piv -------------------------------------------------------------

int run_piv(int n, const std::string& method_name, std::optional<double> shift, double tol,
            const OutputOptions& out) {
  const plotpos::PIV piv = plotpos::piv_for(n, parse_method(method_name, shift, tol));
  if (out.format == "json") {
    json rows = json::array();
    for (int i = 1; i <= piv.n; ++i) rows.push_back({{"i", i}, {"p", piv.at(i)}});
    emit(json{{"n", piv.n}, {"method", method_name}, {"rows", rows}}.dump());
    return kExitOk;
  }
  emit("i,p");
  for (int i = 1; i <= piv.n; ++i) {
    emit(std::to_string(i) + "," + fmt(piv.at(i), out.digits));
  }
  return kExitOk;
}

// ---- compare ---------------------------------------------------------

int run_compare(int n, const std::string& items, double tol, const OutputOptions& out) {
  std::string requested;
  for (char c : items) {
    if (c == ',' || c == ' ') continue;
    if (c < 'a' || c > 'j') {
      throw std::domain_error("check items must be letters a..j");
    }
    requested.push_back(c);
  }
  plotpos::SolverConfig cfg;
  cfg.abs_tol = tol;
  const plotpos::ComparisonReport report = plotpos::comparison_report(n, cfg);

  bool all_pass = true;
  for (char c : requested) all_pass = all_pass && report.checks.at(c).pass;

  if (out.format == "json") {
    json rows = json::array();
    for (const auto& row : report.rows) {
      rows.push_back({{"i", row.i},
                      {"p_w", row.p_w},
                      {"p_b", row.p_b},
                      {"diff", row.diff},
                      {"bound_diff", row.bound_diff},
                      {"ratio", row.ratio},
                      {"one_minus_ratio", row.one_minus_ratio}});
    }
    json checks = json::object();
    for (char c : requested) {
      const plotpos::CheckResult& r = report.checks.at(c);
      checks[std::string(1, c)] = {{"pass", r.pass}, {"margin", r.margin}, {"note", r.note}};
    }
    emit(json{{"n", n}, {"rows", rows}, {"checks", checks}, {"all_pass", all_pass}}.dump());
  } else {
    emit("i,p_w,p_b,diff,bound_diff,ratio,one_minus_ratio");
    for (const auto& row : report.rows) {
      emit(std::to_string(row.i) + "," + fmt(row.p_w, out.digits) + "," +
           fmt(row.p_b, out.digits) + "," + fmt(row.diff, out.digits) + "," +
           fmt(row.bound_diff, out.digits) + "," + fmt(row.ratio, out.digits) + "," +
           fmt(row.one_minus_ratio, out.digits));
    }
  }
  if (!all_pass) {
    for (char c : requested) {
      if (!report.checks.at(c).pass) {
        std::cerr << "check '" << c << "' failed (margin " << report.checks.at(c).margin << ")\n";
      }
    }
  }
  return all_pass ? kExitOk : kExitCheckFailed;
}

// ---- table1 / figure1 ------------------------------------------------

void emit_cells(const std::vector<plotpos::TableCell>& cells, const OutputOptions& out) {
  if (out.format == "json") {
    json rows = json::array();
    for (const auto& cell : cells) {
      rows.push_back({{"method", cell.method},
                      {"n", cell.n},
                      {"i", cell.i},
                      {"p", cell.p},
                      {"log_p", cell.log_p}});
    }
    emit(rows.dump());
    return;
  }
  emit("method,n,i,p,log_p");
  for (const auto& cell : cells) {
    emit(cell.method + "," + std::to_string(cell.n) + "," + std::to_string(cell.i) + "," +
         fmt(cell.p, out.digits) + "," + fmt(cell.log_p, out.digits));
  }
}

int run_table1(const OutputOptions& out) {
  emit_cells(plotpos::reproduce_table1(), out);
  return kExitOk;
}

int run_figure1(const std::string& n_list_text, const std::string& fractions_text,
                bool include_first, const OutputOptions& out) {
  std::vector<int> n_list;
  for (const std::string& part : split(n_list_text, ',')) {
    if (part.empty()) throw std::domain_error("empty entry in --n-list");
    n_list.push_back(std::stoi(part));
  }
  std::vector<plotpos::Fraction> fractions;
  for (const std::string& part : split(fractions_text, ',')) {
    if (part.empty()) continue;
    fractions.push_back(parse_fraction(part));
  }
  emit_cells(plotpos::figure1_data(n_list, fractions, include_first), out);
  return kExitOk;
}

// ---- game ------------------------------------------------------------

int run_game(int game_id, int n, int i, double pa, double pb, std::uint64_t trials,
             std::uint64_t seed, const std::string& mode_name, std::uint64_t cap,
             unsigned workers, const OutputOptions& out) {
  if (cap < 1) throw std::domain_error("--cap must be at least 1");
  plotpos::Game4Mode mode = plotpos::Game4Mode::AnalyticConditional;
  if (mode_name == "rejection") {
    mode = plotpos::Game4Mode::Rejection;
  } else if (mode_name != "analytic") {
    throw std::domain_error("--mode must be analytic or rejection");
  }
  const plotpos::GameSpec spec(game_id, plotpos::OrderStatIndex(n, i), pa, pb, trials, seed);
  const plotpos::GameReport report = plotpos::simulate_game(spec, mode, cap, workers);
  const std::string mode_label = game_id == 4 ? mode_name : "";

  if (out.format == "json") {
    json obj{{"game", game_id},
             {"n", n},
             {"i", i},
             {"p_a", pa},
             {"p_b", pb},
             {"trials", trials},
             {"seed", seed},
             {"wins_a", report.wins_a},
             {"wins_b", report.wins_b},
             {"draws", report.draws},
             {"mean_payoff_a", report.mean_payoff_a},
             {"std_error", report.std_error}};
    if (game_id == 4) obj["mode"] = mode_label;
    if (report.analytic_payoff_a) obj["analytic_payoff_a"] = *report.analytic_payoff_a;
    emit(obj.dump());
    return kExitOk;
  }
  emit("game,n,i,p_a,p_b,trials,seed,mode,wins_a,wins_b,draws,mean_payoff_a,std_error,"
       "analytic_payoff_a");
  emit(std::to_string(game_id) + "," + std::to_string(n) + "," + std::to_string(i) + "," +
       fmt(pa, out.digits) + "," + fmt(pb, out.digits) + "," + std::to_string(trials) + "," +
       std::to_string(seed) + "," + mode_label + "," + std::to_string(report.wins_a) + "," +
       std::to_string(report.wins_b) + "," + std::to_string(report.draws) + "," +
       fmt(report.mean_payoff_a, out.digits) + "," + fmt(report.std_error, out.digits) + "," +
       (report.analytic_payoff_a ? fmt(*report.analytic_payoff_a, out.digits) : ""));
  return kExitOk;
}

// ---- qqplot ----------------------------------------------------------

std::vector<double> read_data_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open data file '" + path + "'");
  std::vector<double> values;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const char* begin = line.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    // Require exactly one finite value per line, ignoring surrounding blanks.
    while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
    if (end == begin || (end && *end != '\0') || !std::isfinite(v)) {
      throw IoError("line " + std::to_string(line_no) + " of '" + path +
                    "' is not a finite number");
    }
    values.push_back(v);
  }
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return values;
}

int run_qqplot(const std::string& path, const std::string& dist_name, double mean, double stddev,
               double rate, const std::string& method_name, std::optional<double> shift,
               double tol, const OutputOptions& out) {
  plotpos::Distribution dist = plotpos::Distribution::uniform();
  if (dist_name == "normal") {
    dist = plotpos::Distribution::normal(mean, stddev);
  } else if (dist_name == "exponential") {
    dist = plotpos::Distribution::exponential(rate);
  } else if (dist_name != "uniform") {
    throw std::domain_error("--dist must be uniform, normal or exponential");
  }

  std::vector<double> data = read_data_file(path);
  if (data.empty()) throw std::domain_error("data file '" + path + "' is empty");
  std::stable_sort(data.begin(), data.end());

  const int n = static_cast<int>(data.size());
  const plotpos::PIV piv = plotpos::piv_for(n, parse_method(method_name, shift, tol));

  if (out.format == "json") {
    json rows = json::array();
    for (int i = 1; i <= n; ++i) {
      rows.push_back({{"i", i},
                      {"p", piv.at(i)},
                      {"q_theoretical", dist.quantile(piv.at(i))},
                      {"x_order_stat", data[static_cast<size_t>(i - 1)]}});
    }
    emit(json{{"n", n}, {"method", method_name}, {"dist", dist.name()}, {"rows", rows}}.dump());
    return kExitOk;
  }
  emit("i,p,q_theoretical,x_order_stat");
  for (int i = 1; i <= n; ++i) {
    emit(std::to_string(i) + "," + fmt(piv.at(i), out.digits) + "," +
         fmt(dist.quantile(piv.at(i)), out.digits) + "," +
         fmt(data[static_cast<size_t>(i - 1)], out.digits));
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Plotting positions for QQ-plots: position vectors, method comparison, "
               "betting-game simulation and plot coordinates"};
  app.require_subcommand(1);
  app.fallthrough();

  OutputOptions out;
  double tol = 1e-12;
  app.add_option("--format", out.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--digits", out.digits, "Significant digits for csv floats")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  app.add_option("--tol", tol, "Solver tolerance")->capture_default_str();

  int exit_code = kExitOk;

  // piv
  auto* piv_cmd = app.add_subcommand("piv", "Print the position vector for a sample size");
  int piv_n = 0;
  std::string piv_method = "beta-median";
  std::optional<double> piv_shift;
  piv_cmd->add_option("--n", piv_n, "Sample size")->required();
  piv_cmd->add_option("--method", piv_method, "Position method")->capture_default_str();
  piv_cmd->add_option("--a", piv_shift, "Shift constant for --method const-a");
  piv_cmd->callback([&] { exit_code = run_piv(piv_n, piv_method, piv_shift, tol, out); });

  // compare
  auto* compare_cmd =
      app.add_subcommand("compare", "Check the Weibull vs Beta-median bounds for one n");
  int compare_n = 0;
  std::string compare_items = "abcdefghij";
  compare_cmd->add_option("--n", compare_n, "Sample size (n > 2)")->required();
  compare_cmd->add_option("--items", compare_items, "Checks to evaluate, letters a..j")
      ->capture_default_str();
  compare_cmd->callback([&] { exit_code = run_compare(compare_n, compare_items, tol, out); });

  // table1
  auto* table_cmd =
      app.add_subcommand("table1", "Log positions of all methods for n = 2..5 (lower half)");
  table_cmd->callback([&] { exit_code = run_table1(out); });

  // figure1
  auto* figure_cmd =
      app.add_subcommand("figure1", "Log positions at fractional indices across sample sizes");
  std::string figure_n_list = "10,20,30,40,50,60,70,80,90,100,110,120,130,140,150";
  std::string figure_fractions = "1/10,2/10,4/10";
  bool figure_no_first = false;
  figure_cmd->add_option("--n-list", figure_n_list, "Comma-separated sample sizes")
      ->capture_default_str();
  figure_cmd->add_option("--fractions", figure_fractions,
                         "Comma-separated fractions (decimal or p/q)")
      ->capture_default_str();
  figure_cmd->add_flag("--no-position-one", figure_no_first, "Do not add position 1");
  figure_cmd->callback(
      [&] { exit_code = run_figure1(figure_n_list, figure_fractions, !figure_no_first, out); });

  // game
  auto* game_cmd = app.add_subcommand("game", "Simulate one of the four betting games");
  int game_id = 0, game_n = 0, game_i = 0;
  double game_pa = 0.0, game_pb = 0.0;
  std::uint64_t game_trials = 100000, game_seed = 0, game_cap = 10000;
  unsigned game_workers = 1;
  std::string game_mode = "analytic";
  game_cmd->add_option("--game", game_id, "Game id 1..4")->required();
  game_cmd->add_option("--n", game_n, "Sample size")->required();
  game_cmd->add_option("--i", game_i, "Order-statistic rank")->required();
  game_cmd->add_option("--pa", game_pa, "Player A's position")->required();
  game_cmd->add_option("--pb", game_pb, "Player B's position")->required();
  game_cmd->add_option("--trials", game_trials, "Monte Carlo trials")->capture_default_str();
  game_cmd->add_option("--seed", game_seed, "RNG seed")->capture_default_str();
  game_cmd->add_option("--mode", game_mode, "Game 4 mode: analytic or rejection")
      ->capture_default_str();
  game_cmd->add_option("--cap", game_cap, "Game 4 rejection draw cap")->capture_default_str();
  game_cmd->add_option("--workers", game_workers, "Worker threads")->capture_default_str();
  game_cmd->callback([&] {
    exit_code = run_game(game_id, game_n, game_i, game_pa, game_pb, game_trials, game_seed,
                         game_mode, game_cap, game_workers, out);
  });

  // qqplot
  auto* qq_cmd = app.add_subcommand("qqplot", "QQ-plot coordinates for a data file");
  std::string qq_data, qq_dist = "uniform", qq_method = "beta-median";
  double qq_mean = 0.0, qq_stddev = 1.0, qq_rate = 1.0;
  std::optional<double> qq_shift;
  qq_cmd->add_option("--data", qq_data, "Data file, one value per line")->required();
  qq_cmd->add_option("--dist", qq_dist, "Theoretical family: uniform, normal, exponential")
      ->capture_default_str();
  qq_cmd->add_option("--mean", qq_mean, "Normal mean")->capture_default_str();
  qq_cmd->add_option("--stddev", qq_stddev, "Normal standard deviation")->capture_default_str();
  qq_cmd->add_option("--rate", qq_rate, "Exponential rate")->capture_default_str();
  qq_cmd->add_option("--method", qq_method, "Position method")->capture_default_str();
  qq_cmd->add_option("--a", qq_shift, "Shift constant for --method const-a");
  qq_cmd->callback([&] {
    exit_code = run_qqplot(qq_data, qq_dist, qq_mean, qq_stddev, qq_rate, qq_method, qq_shift,
                           tol, out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const plotpos::SolverError& e) {
    std::cerr << "solver error: " << e.what() << " (bracket [" << e.bracket_lo() << ", "
              << e.bracket_hi() << "])\n";
    return kExitSolver;
  } catch (const std::logic_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  }
  return exit_code;
}
