#include <doctest.h>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "ncdag/experiment.hpp"
#include "ncdag/game.hpp"
#include "ncdag/slot_log.hpp"

using namespace ncdag;
using namespace ncdag::experiment;
using doctest::Approx;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string f; std::getline(in, f, ',');) out.push_back(f);
  return out;
}

ExperimentConfig small_sweep() {
  ExperimentConfig c;
  c.payloads = {100, 1500};
  c.runs = 4;
  c.master_seed = 7;
  return c;
}

}  // namespace

TEST_CASE("cell enumeration order") {
  ExperimentConfig c;
  c.payloads = {100, 250, 500, 750, 1000, 1500};
  const auto cells = enumerate_cells(c);
  CHECK(cells.size() == 36);
  CHECK(cells.front().strategy == mac::StrategyKind::SimpleDag);
  CHECK(cells.front().rate_mbps == 54.0);
  CHECK(cells.front().payload == 100);
  CHECK(cells[1].payload == 250);
  CHECK(cells[6].rate_mbps == 24.0);
  CHECK(cells[12].strategy == mac::StrategyKind::DelayBoundedDag);
  CHECK(cells.back().strategy == mac::StrategyKind::BoMac);
}

TEST_CASE("run seeds") {
  CHECK(run_seed(1, 0) == run_seed(1, 0));
  CHECK(run_seed(1, 0) != run_seed(1, 1));
  CHECK(run_seed(1, 0) != run_seed(2, 0));
}

TEST_CASE("sweep csv shape") {
  ExperimentConfig c;
  c.payloads = {100, 250, 500, 750, 1000, 1500};
  c.runs = 2;
  const auto rows = run_experiment(c);
  REQUIRE(rows.size() == 36);
  std::ostringstream csv;
  write_experiment_csv(csv, rows);
  const auto ls = lines(csv.str());
  REQUIRE(ls.size() == 37);
  const auto header = split(ls[0]);
  CHECK(header.size() == 16);
  CHECK(header[0] == "strategy");
  CHECK(header.back() == "energy_scope");
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = split(ls[i]);
    REQUIRE(f.size() == 16);
    CHECK(f[3] == "2");
    CHECK(f.back() == "all_nodes");
    const double rates = std::stod(f[11]) + std::stod(f[12]) + std::stod(f[13]) + std::stod(f[14]);
    CHECK(rates == Approx(1.0));
  }
  CHECK(split(ls[1])[0] == "simple");
  CHECK(split(ls[13])[0] == "delay-bounded");
  CHECK(split(ls[25])[0] == "bo-mac");
  CHECK(split(ls[6])[4] == "12");   // 1500 B at 54 Mb/s
  CHECK(split(ls[12])[4] == "26");  // 1500 B at 24 Mb/s
}

TEST_CASE("sweep is deterministic and independent of worker count") {
  auto c = small_sweep();
  c.workers = 1;
  std::string log1;
  const auto a = run_experiment(c, &log1);
  c.workers = 3;
  std::string log3;
  const auto b = run_experiment(c, &log3);
  std::ostringstream ca, cb;
  write_experiment_csv(ca, a);
  write_experiment_csv(cb, b);
  CHECK(ca.str() == cb.str());
  CHECK(log1 == log3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].records == b[i].records);

  c.master_seed = 8;
  std::ostringstream cc;
  write_experiment_csv(cc, run_experiment(c));
  CHECK(cc.str() != ca.str());
}

TEST_CASE("strategies share run seeds") {
  auto c = small_sweep();
  c.strategies = {mac::StrategyKind::SimpleDag};
  const auto rows = run_experiment(c);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.records.size(); ++i) {
      CHECK(row.records[i] == engine::run(make_sim_config(c, row.cell), run_seed(c.master_seed, i)));
    }
  }
}

TEST_CASE("slot log of a sweep") {
  auto c = small_sweep();
  c.strategies = {mac::StrategyKind::DelayBoundedDag};
  c.rates = {54.0};
  std::string log;
  const auto rows = run_experiment(c, &log);
  std::istringstream in(log);
  const auto entries = engine::read_slot_log(in);
  std::map<std::int64_t, std::uint64_t> rounds;
  for (const auto& e : entries) ++rounds[e.run];
  REQUIRE(rounds.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rounds[static_cast<std::int64_t>(i)] == rows[i].records[0].histogram.rounds());
  }
}

TEST_CASE("sweep validation") {
  ExperimentConfig c;
  c.payloads = {99};
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
  c.payloads = {1501};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.rates = {11.0};
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.runs = 0;
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.strategies.clear();
  CHECK_THROWS_AS(c.validate(), std::invalid_argument);
  c = ExperimentConfig{};
  c.cw_max = 8;
  c.runs = 1;
  CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
}

TEST_CASE("worker count") {
  CHECK(worker_count(5) == 5);
  CHECK(worker_count(0) >= 1);
}

TEST_CASE("utility curves") {
  std::ostringstream out;
  emit_utility_curves(out, 0.7, 1.0, 100.0, 2);
  const auto ls = lines(out.str());
  REQUIRE(ls.size() == 11);
  CHECK(ls[0] == "s2,s1,utility,s1_nep,utility_at_nep");
  CHECK(split(ls[1])[1] == "0.25");
  CHECK(split(ls[2])[1] == "0.75");

  std::ostringstream fine;
  emit_utility_curves(fine, 0.7, 1.0, 100.0, 200);
  const auto fl = lines(fine.str());
  REQUIRE(fl.size() == 1001);
  std::map<double, std::vector<double>> u_nep;
  std::map<double, std::pair<double, double>> best;  // s2 -> (s1, utility)
  for (std::size_t i = 1; i < fl.size(); ++i) {
    const auto f = split(fl[i]);
    const double s2 = std::stod(f[0]);
    const double s1 = std::stod(f[1]);
    const double u = std::stod(f[2]);
    CHECK(std::isfinite(u));
    CHECK(u > 0.0);
    CHECK(std::stod(f[3]) == Approx(0.7 / 1.7).epsilon(1e-11));
    u_nep[s2].push_back(std::stod(f[4]));
    if (best.find(s2) == best.end() || u > best[s2].second) best[s2] = {s1, u};
  }
  // At the equilibrium the utility does not depend on the other player.
  std::vector<double> at_nep;
  for (const auto& [s2, v] : u_nep) at_nep.push_back(v.front());
  for (double v : at_nep) CHECK(std::abs(v - at_nep.front()) <= 1e-12 * at_nep.front());
  // Against an always-transmitting opponent the best reply is to wait.
  CHECK(best[1.0].first == Approx(0.0025));

  CHECK_THROWS_AS(emit_utility_curves(out, 0.7, 1.0, 100.0, 1), std::invalid_argument);
}

TEST_CASE("best-response locus") {
  std::ostringstream out;
  emit_best_response_locus(out, 0.7, 1.0, 101);
  const auto ls = lines(out.str());
  REQUIRE(ls.size() > 2);
  CHECK(ls[0] == "kind,s1,s2,residual");
  int fixed = 0, lo = 0, hi = 0, contour = 0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = split(ls[i]);
    REQUIRE(f.size() == 4);
    const double s1 = std::stod(f[1]);
    const double s2 = std::stod(f[2]);
    CHECK(std::isfinite(std::stod(f[3])));
    if (f[0] == "fixed_point") {
      ++fixed;
      CHECK(s1 == Approx(0.2482093652).epsilon(1e-9));
      CHECK(s1 == s2);
    } else if (f[0] == "diagonal_bracket_lo") {
      ++lo;
      CHECK(s1 == Approx(0.24));
    } else if (f[0] == "diagonal_bracket_hi") {
      ++hi;
      CHECK(s1 == Approx(0.25));
    } else {
      REQUIRE(f[0] == "contour");
      ++contour;
      CHECK(std::abs(game::best_response_residual({s1, s2}, 0.7, 1.0)) < 1e-8);
    }
  }
  CHECK(fixed == 1);
  CHECK(lo == 1);
  CHECK(hi == 1);
  CHECK(contour > 50);
}
