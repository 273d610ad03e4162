#include "ncdag/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "ncdag/game.hpp"
#include "ncdag/random.hpp"
#include "ncdag/slot_log.hpp"

namespace ncdag::experiment {

void ExperimentConfig::validate() const {
  if (strategies.empty()) throw std::invalid_argument("no strategy selected");
  if (payloads.empty()) throw std::invalid_argument("no payload selected");
  if (rates.empty()) throw std::invalid_argument("no rate selected");
  for (auto p : payloads) {
    if (p < 100 || p > 1500) throw std::invalid_argument(fmt::format("payload {} outside [100, 1500]", p));
  }
  for (auto r : rates) {
    if (r != 24.0 && r != 54.0) throw std::invalid_argument(fmt::format("rate {} is not 24 or 54 Mb/s", r));
  }
  if (runs == 0) throw std::invalid_argument("runs must be at least 1");
}

std::vector<Cell> enumerate_cells(const ExperimentConfig& config) {
  std::vector<Cell> cells;
  for (auto s : config.strategies) {
    for (auto r : config.rates) {
      for (auto p : config.payloads) cells.push_back({s, p, r});
    }
  }
  return cells;
}

engine::SimConfig make_sim_config(const ExperimentConfig& config, const Cell& cell) {
  engine::SimConfig sc;
  sc.strategy = cell.strategy;
  sc.phy.rate_mbps = cell.rate_mbps;
  sc.phy.payload_len = cell.payload;
  sc.a = config.a;
  sc.b = config.b;
  sc.p_poll = config.p_poll;
  sc.alternating_poll = config.alternating_poll;
  sc.cw_max = config.cw_max;
  sc.collision = config.collision;
  sc.advance = config.advance;
  return sc;
}

std::uint64_t run_seed(std::uint64_t master, std::size_t index) { return Rng::derive(master, index).next(); }

std::size_t worker_count(std::size_t requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("NCDAG_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::string* slot_log) {
  config.validate();
  const auto cells = enumerate_cells(config);
  std::vector<engine::SimConfig> sims;
  for (const auto& c : cells) {
    sims.push_back(make_sim_config(config, c));
    sims.back().validate();
  }

  const std::size_t total = cells.size() * config.runs;
  std::vector<metrics::RunRecord> records(total);
  std::vector<std::string> logs(slot_log != nullptr ? cells.size() : 0);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t cell = task / config.runs;
      const std::size_t run = task % config.runs;
      try {
        const auto seed = run_seed(config.master_seed, run);
        if (slot_log != nullptr && run == 0) {
          std::ostringstream buf;
          engine::SlotLogWriter writer(buf, static_cast<std::int64_t>(cell));
          records[task] = engine::run(sims[cell], seed, &writer);
          logs[cell] = buf.str();
        } else {
          records[task] = engine::run(sims[cell], seed);
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
    }
  };

  const std::size_t n_workers = std::min(worker_count(config.workers), total);
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 1; i < n_workers; ++i) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<ResultRow> rows;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    ResultRow row;
    row.cell = cells[c];
    row.tx_slots = sims[c].phy.tx_slots();
    row.records.assign(records.begin() + static_cast<std::ptrdiff_t>(c * config.runs),
                       records.begin() + static_cast<std::ptrdiff_t>((c + 1) * config.runs));
    row.summary = metrics::aggregate(row.records);
    rows.push_back(std::move(row));
  }
  if (slot_log != nullptr) {
    for (const auto& l : logs) slot_log->append(l);
  }
  return rows;
}

void write_experiment_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "strategy,payload_bytes,rate_mbps,runs,tx_slots,"
         "mean_completion_ms,sd_completion_ms,ci95_completion_ms,"
         "mean_efficiency_bits_per_j,sd_efficiency_bits_per_j,ci95_efficiency_bits_per_j,"
         "idle_rate,success_rate,collision_rate,poll_rate,energy_scope\n";
  for (const auto& r : rows) {
    const auto& s = r.summary;
    fmt::print(out, "{},{},{},{},{},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{:.10g},{}\n",
               mac::to_string(r.cell.strategy), r.cell.payload, r.cell.rate_mbps, s.runs, r.tx_slots,
               s.completion_time_us.mean * 1e-3, s.completion_time_us.stddev * 1e-3,
               s.completion_time_us.ci95_half * 1e-3, s.energy_efficiency.mean, s.energy_efficiency.stddev,
               s.energy_efficiency.ci95_half, s.idle_rate, s.success_rate, s.collision_rate, s.poll_rate,
               "all_nodes");
  }
}

void emit_utility_curves(std::ostream& out, double a, double b, double total, std::size_t grid) {
  if (grid < 2) throw std::invalid_argument("grid resolution must be at least 2");
  const auto g = game::GameParams::from_ratios(kCurveSendEnergy, a, b, total);
  const double nep = game::nep_simple(a, b);
  out << "s2,s1,utility,s1_nep,utility_at_nep\n";
  for (double s2 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const double u_nep = game::utility(g, game::expected_energy_simple({nep, s2}, g, game::Player::One));
    for (std::size_t k = 0; k < grid; ++k) {
      const double s1 = (static_cast<double>(k) + 0.5) / static_cast<double>(grid);
      const double u = game::utility(g, game::expected_energy_simple({s1, s2}, g, game::Player::One));
      fmt::print(out, "{:.10g},{:.10g},{:.12g},{:.12g},{:.12g}\n", s2, s1, u, nep, u_nep);
    }
  }
}

namespace {

template <typename F>
double bisect(F f, double lo, double hi) {
  const bool rising = f(lo) < 0.0;
  for (int i = 0; i < 200 && hi - lo > 1e-13; ++i) {
    const double m = 0.5 * (lo + hi);
    if ((f(m) < 0.0) == rising) {
      lo = m;
    } else {
      hi = m;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void emit_best_response_locus(std::ostream& out, double a, double b, std::size_t grid) {
  if (grid < 2) throw std::invalid_argument("grid resolution must be at least 2");
  auto at = [&](std::size_t i) { return static_cast<double>(i) / static_cast<double>(grid - 1); };
  auto row = [&](std::string_view kind, double s1, double s2) {
    fmt::print(out, "{},{:.12g},{:.12g},{:.6e}\n", kind, s1, s2, game::best_response_residual({s1, s2}, a, b));
  };

  // The zero set is steep in s2, so scan both along s1 (per grid s2) and along s2 (per grid s1).
  auto scan = [&](auto f, auto emit) {
    for (std::size_t i = 0; i + 1 < grid; ++i) {
      const double f_lo = f(at(i));
      const double f_hi = f(at(i + 1));
      if (f_lo == 0.0) {
        emit(at(i));
      } else if ((f_lo < 0.0) != (f_hi < 0.0) && f_hi != 0.0) {
        emit(bisect(f, at(i), at(i + 1)));
      }
    }
    if (f(at(grid - 1)) == 0.0) emit(1.0);
  };

  out << "kind,s1,s2,residual\n";
  for (std::size_t j = 0; j < grid; ++j) {
    const double fixed = at(j);
    scan([&](double s1) { return game::best_response_residual({s1, fixed}, a, b); },
         [&](double s1) { row("contour", s1, fixed); });
    scan([&](double s2) { return game::best_response_residual({fixed, s2}, a, b); },
         [&](double s2) { row("contour", fixed, s2); });
  }

  auto diag = [&](double s) { return game::best_response_residual({s, s}, a, b); };
  for (std::size_t i = 0; i + 1 < grid; ++i) {
    if ((diag(at(i)) < 0.0) != (diag(at(i + 1)) < 0.0)) {
      row("diagonal_bracket_lo", at(i), at(i));
      row("diagonal_bracket_hi", at(i + 1), at(i + 1));
    }
  }
  const double fp = game::nep_delay_bounded(a, b);
  row("fixed_point", fp, fp);
}

}  // namespace ncdag::experiment
