#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ncdag/engine.hpp"

// Line-delimited JSON event log, one object per contention round:
//
//   {"run":0,"round":17,"start_slot":203,"slots":12,"result":"success",
//    "source":1,"generation":5,"actions":["W","T"],"impacts":[4,4],
//    "innovative":[0,0,1,1,1,1],"modes":"ITIIRRRR"}
//
// "modes" has one character per node (sources first): T transmit,
// R receive, I idle. "source" and "generation" are -1 unless a packet went
// out alone. Energy can be recomputed from "slots" and "modes".
namespace ncdag::engine {

class SlotLogWriter {
 public:
  explicit SlotLogWriter(std::ostream& out, std::int64_t run_tag = 0) : out_(out), run_tag_(run_tag) {}

  void set_run_tag(std::int64_t tag) noexcept { run_tag_ = tag; }
  void write(const SlotOutcome& o);

 private:
  std::ostream& out_;
  std::int64_t run_tag_;
};

struct SlotLogEntry {
  std::int64_t run = 0;
  std::uint64_t round = 0;
  std::uint64_t start_slot = 0;
  std::uint64_t slots = 0;
  std::string result;
  int source = -1;
  int generation = -1;
  std::string modes;
};

// Throws std::runtime_error on a malformed line.
std::vector<SlotLogEntry> read_slot_log(std::istream& in);

// Per-node energy recomputed from the log alone.
std::vector<double> energy_from_log(const std::vector<SlotLogEntry>& entries, const EnergyModel& model,
                                    double slot_us);

}  // namespace ncdag::engine
