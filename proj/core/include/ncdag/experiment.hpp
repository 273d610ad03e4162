#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ncdag/engine.hpp"
#include "ncdag/mac.hpp"
#include "ncdag/metrics.hpp"

// Sweep orchestration and CSV emission.
namespace ncdag::experiment {

struct ExperimentConfig {
  std::vector<mac::StrategyKind> strategies{mac::StrategyKind::SimpleDag, mac::StrategyKind::DelayBoundedDag,
                                            mac::StrategyKind::BoMac};
  std::vector<std::size_t> payloads{100, 250, 500, 1000, 1500};
  std::vector<double> rates{54.0, 24.0};
  std::size_t runs = 100;
  std::uint64_t master_seed = 1;
  double a = 0.7;
  double b = 1.0;
  double p_poll = 0.5;
  std::uint32_t cw_max = mac::kCwMaxDefault;
  bool alternating_poll = false;
  engine::CollisionScope collision = engine::CollisionScope::Full;
  engine::GenerationAdvance advance = engine::GenerationAdvance::PerSuccess;
  std::size_t workers = 0;  // 0: NCDAG_WORKERS or hardware concurrency

  // Payloads in [100, 1500], rates 24 or 54, runs >= 1.
  void validate() const;
};

struct Cell {
  mac::StrategyKind strategy;
  std::size_t payload;
  double rate_mbps;
};

// Strategy-major, then rate, then payload.
std::vector<Cell> enumerate_cells(const ExperimentConfig& config);

engine::SimConfig make_sim_config(const ExperimentConfig& config, const Cell& cell);

// Seed of run `index` under `master`; shared by every cell so strategies are
// compared on common random streams.
std::uint64_t run_seed(std::uint64_t master, std::size_t index);

struct ResultRow {
  Cell cell;
  std::uint64_t tx_slots = 0;
  metrics::BatchSummary summary;
  std::vector<metrics::RunRecord> records;
};

// Runs every (cell, run) pair on a bounded worker pool. Rows come back in
// cell order. When `slot_log` is given, the first run of every cell is logged
// into it with the cell index as the run tag.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, std::string* slot_log = nullptr);

void write_experiment_csv(std::ostream& out, const std::vector<ResultRow>& rows);

inline constexpr double kCurveSendEnergy = 9.5e-4;

// Player one's utility for s2 in {0, 0.25, 0.5, 0.75, 1} at s1 cell midpoints
// (k + 0.5) / grid, k < grid. Columns: s2,s1,utility,s1_nep,utility_at_nep.
void emit_utility_curves(std::ostream& out, double a, double b, double total, std::size_t grid);

// Zero set of the best-response residual over the unit square, scanned along both axes, the diagonal
// sign-change bracket, and the symmetric fixed point. Columns: kind,s1,s2,residual.
void emit_best_response_locus(std::ostream& out, double a, double b, std::size_t grid);

// Worker count: `requested` if non-zero, else NCDAG_WORKERS, else hardware concurrency.
std::size_t worker_count(std::size_t requested);

}  // namespace ncdag::experiment
