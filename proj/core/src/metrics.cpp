#include "ncdag/metrics.hpp"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ncdag/rlnc.hpp"

namespace ncdag::metrics {

double RunRecord::total_energy() const noexcept {
  return std::accumulate(energy_per_node.begin(), energy_per_node.end(), 0.0);
}

double energy_efficiency(const RunRecord& r) {
  const double total = r.total_energy();
  if (!(total > 0.0)) throw std::invalid_argument("run consumed no energy");
  const double bits = static_cast<double>(r.num_sinks()) * static_cast<double>(rlnc::kSourcePackets) *
                      static_cast<double>(r.payload_len) * 8.0;
  return bits / total;
}

Summary summarize(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("cannot summarize an empty sample");
  const double n = static_cast<double>(values.size());
  // Sorted summation keeps the result independent of record order.
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double mean = std::accumulate(sorted.begin(), sorted.end(), 0.0) / n;
  Summary s{mean, 0.0, 0.0};
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : sorted) ss += (v - mean) * (v - mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
    s.ci95_half = 1.96 * s.stddev / std::sqrt(n);
  }
  return s;
}

BatchSummary aggregate(std::span<const RunRecord> records) {
  if (records.empty()) throw std::invalid_argument("cannot aggregate an empty batch");
  std::vector<double> times;
  std::vector<double> effs;
  SlotHistogram h;
  for (const auto& r : records) {
    times.push_back(r.completion_time_us);
    effs.push_back(energy_efficiency(r));
    h.idle += r.histogram.idle;
    h.success += r.histogram.success;
    h.collision += r.histogram.collision;
    h.poll += r.histogram.poll;
  }
  BatchSummary b;
  b.runs = records.size();
  b.completion_time_us = summarize(times);
  b.energy_efficiency = summarize(effs);
  const double rounds = static_cast<double>(h.rounds());
  if (rounds > 0) {
    b.idle_rate = static_cast<double>(h.idle) / rounds;
    b.success_rate = static_cast<double>(h.success) / rounds;
    b.collision_rate = static_cast<double>(h.collision) / rounds;
    b.poll_rate = static_cast<double>(h.poll) / rounds;
  }
  return b;
}

}  // namespace ncdag::metrics
