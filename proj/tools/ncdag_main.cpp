// ncdag: dissemination access game sweeps and equilibrium tables.

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ncdag/experiment.hpp"
#include "ncdag/game.hpp"

namespace {

using namespace ncdag;

// Writes to the named file, or stdout for "" / "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<mac::StrategyKind> parse_strategies(const std::vector<std::string>& names) {
  std::vector<mac::StrategyKind> out;
  for (const auto& n : names) {
    if (n == "all") {
      out = {mac::StrategyKind::SimpleDag, mac::StrategyKind::DelayBoundedDag, mac::StrategyKind::BoMac};
      continue;
    }
    out.push_back(*mac::parse_strategy(n));
  }
  return out;
}

std::vector<double> parse_rates(const std::vector<std::string>& names) {
  std::vector<double> out;
  for (const auto& n : names) {
    if (n == "both") {
      out = {54.0, 24.0};
    } else {
      out.push_back(std::stod(n));
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Network-coded data dissemination with game-theoretic channel access"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "Monte Carlo sweep over strategy x payload x rate; writes CSV");
  app.set_config("--config", "", "INI/TOML file with option defaults (flags override)");
  std::vector<std::string> strategies{"all"};
  std::vector<std::string> rates{"both"};
  experiment::ExperimentConfig cfg;
  std::string out_path;
  std::string slot_log_path;
  std::string collision = "full";
  std::string advance = "success";
  run->add_option("--strategy", strategies, "simple, delay-bounded, bo-mac or all")
      ->delimiter(',')
      ->check(CLI::IsMember({"simple", "delay-bounded", "bo-mac", "all"}))
      ->capture_default_str();
  run->add_option("--payloads", cfg.payloads, "Payload lengths in bytes, within [100, 1500]")
      ->delimiter(',')
      ->check(CLI::Range(100, 1500))
      ->capture_default_str();
  run->add_option("--rate", rates, "24, 54 or both (Mb/s)")
      ->delimiter(',')
      ->check(CLI::IsMember({"24", "54", "both"}))
      ->capture_default_str();
  run->add_option("--runs", cfg.runs, "Runs per configuration")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--seed", cfg.master_seed, "Master seed")->capture_default_str();
  run->add_option("--out", out_path, "CSV output path (stdout if omitted)");
  run->add_option("--a", cfg.a, "Wait-to-send energy ratio")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--b", cfg.b, "Collision-to-send energy ratio")->check(CLI::PositiveNumber)->capture_default_str();
  run->add_option("--p-poll", cfg.p_poll, "Controller poll probability")->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  run->add_option("--cw-max", cfg.cw_max, "BO-MAC congestion window cap")->check(CLI::Range(32u, 1u << 20))
      ->capture_default_str();
  run->add_option("--emit-slot-log", slot_log_path, "JSON-lines log of the first run of every configuration");
  run->add_flag("--alternating-poll", cfg.alternating_poll, "Poll the sources in strict alternation");
  run->add_option("--collision", collision, "full or capture")
      ->check(CLI::IsMember({"full", "capture"}))
      ->capture_default_str();
  run->add_option("--advance", advance, "Generation advance: success or attempt")
      ->check(CLI::IsMember({"success", "attempt"}))
      ->capture_default_str();
  run->add_option("--workers", cfg.workers, "Worker threads (0: NCDAG_WORKERS or all cores)");

  // utility-curves
  auto* curves = app.add_subcommand("utility-curves", "Player one's utility over s1 for five s2 values; CSV");
  double ua = 0.7, ub = 1.0, total = 100.0;
  std::size_t ugrid = 101;
  std::string curves_out;
  curves->add_option("--a", ua)->check(CLI::PositiveNumber)->capture_default_str();
  curves->add_option("--b", ub)->check(CLI::PositiveNumber)->capture_default_str();
  curves->add_option("--total", total, "Battery budget in joules")->check(CLI::PositiveNumber)->capture_default_str();
  curves->add_option("--grid", ugrid, "Points per curve")->check(CLI::Range(2, 1000000))->capture_default_str();
  curves->add_option("--out", curves_out);

  // best-response
  auto* locus = app.add_subcommand("best-response", "Best-response zero set and symmetric fixed point; CSV");
  double la = 0.7, lb = 1.0;
  std::size_t lgrid = 101;
  std::string locus_out;
  locus->add_option("--a", la)->check(CLI::PositiveNumber)->capture_default_str();
  locus->add_option("--b", lb)->check(CLI::PositiveNumber)->capture_default_str();
  locus->add_option("--grid", lgrid)->check(CLI::Range(2, 100000))->capture_default_str();
  locus->add_option("--out", locus_out);

  // equilibria
  auto* eq = app.add_subcommand("equilibria", "Print both equilibrium transmit probabilities");
  double ea = 0.7, eb = 1.0;
  eq->add_option("--a", ea)->check(CLI::PositiveNumber)->capture_default_str();
  eq->add_option("--b", eb)->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) {
      cfg.strategies = parse_strategies(strategies);
      cfg.rates = parse_rates(rates);
      cfg.collision = collision == "capture" ? engine::CollisionScope::Capture : engine::CollisionScope::Full;
      cfg.advance = advance == "attempt" ? engine::GenerationAdvance::PerAttempt : engine::GenerationAdvance::PerSuccess;
      std::string log;
      const auto rows = experiment::run_experiment(cfg, slot_log_path.empty() ? nullptr : &log);
      Output out(out_path);
      experiment::write_experiment_csv(out.stream(), rows);
      if (!slot_log_path.empty()) {
        Output lo(slot_log_path);
        lo.stream() << log;
      }
    } else if (*curves) {
      Output out(curves_out);
      experiment::emit_utility_curves(out.stream(), ua, ub, total, ugrid);
    } else if (*locus) {
      Output out(locus_out);
      experiment::emit_best_response_locus(out.stream(), la, lb, lgrid);
    } else if (*eq) {
      std::cout.precision(12);
      std::cout << "simple_dag " << game::nep_simple(ea, eb) << '\n'
                << "delay_bounded_dag " << game::nep_delay_bounded(ea, eb) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "ncdag: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
