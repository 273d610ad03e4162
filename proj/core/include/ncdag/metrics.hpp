#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

// Completion time and energy efficiency of finished runs, and Monte Carlo
// aggregation over batches of them.
namespace ncdag::metrics {

struct SlotHistogram {
  std::uint64_t idle = 0;
  std::uint64_t success = 0;
  std::uint64_t collision = 0;
  std::uint64_t poll = 0;

  std::uint64_t rounds() const noexcept { return idle + success + collision + poll; }
  friend bool operator==(const SlotHistogram&, const SlotHistogram&) = default;
};

struct RunRecord {
  std::uint64_t completion_slots = 0;
  double completion_time_us = 0.0;
  std::size_t num_sources = 0;
  std::vector<double> energy_per_node;  // joules; sources first, then sinks
  SlotHistogram histogram;
  std::uint64_t innovative_deliveries = 0;
  std::uint64_t non_innovative_receptions = 0;
  std::size_t payload_len = 0;

  std::size_t num_sinks() const noexcept { return energy_per_node.size() - num_sources; }
  double total_energy() const noexcept;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

// Bits of useful payload per joule of network energy:
//   sinks * 16 * 12 * payload_len * 8 / total energy of every node.
// Coding headers are overhead and not counted.
double energy_efficiency(const RunRecord& r);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;     // sample standard deviation (n - 1)
  double ci95_half = 0.0;  // 1.96 * stddev / sqrt(n)
};

// Throws std::invalid_argument on an empty sample.
Summary summarize(std::span<const double> values);

struct BatchSummary {
  std::size_t runs = 0;
  Summary completion_time_us;
  Summary energy_efficiency;
  double idle_rate = 0.0;
  double success_rate = 0.0;
  double collision_rate = 0.0;
  double poll_rate = 0.0;
};

// Throws std::invalid_argument on an empty batch.
BatchSummary aggregate(std::span<const RunRecord> records);

}  // namespace ncdag::metrics
