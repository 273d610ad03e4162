#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "ncdag/mac.hpp"
#include "ncdag/metrics.hpp"
#include "ncdag/random.hpp"
#include "ncdag/rlnc.hpp"

// Slotted-time dissemination simulator: two sources push coded packets to six
// sinks over a shared channel until every sink can decode all generations.
namespace ncdag::engine {

struct Topology {
  std::size_t num_sinks = 6;
  std::vector<std::vector<std::size_t>> coverage;  // sink ids per source

  // S1 covers sinks {0,1,2,3}, S2 covers {2,3,4,5}.
  static Topology standard();
  // One source that reaches every sink.
  static Topology single_source(std::size_t num_sinks = 6);

  std::size_t num_sources() const noexcept { return coverage.size(); }
  std::size_t num_nodes() const noexcept { return num_sources() + num_sinks; }
  bool covers(std::size_t source, std::size_t sink) const;

  // One or two sources, valid sink ids, every sink covered.
  void validate() const;
};

struct PhyConfig {
  double slot_us = 20.0;
  double rate_mbps = 54.0;
  std::size_t payload_len = 1500;
  std::size_t header_len = rlnc::kHeaderSize;

  // ceil((payload + header) * 8 / rate / slot), at least 1.
  std::uint64_t tx_slots() const;
  double slot_seconds() const noexcept { return slot_us * 1e-6; }
  void validate() const;
};

struct EnergyModel {
  double transmit_w = 1.9;
  double receive_w = 1.34;
  double idle_w = 1.34;
  double budget_j = 100.0;

  void validate() const;
};

// When a source moves on to its next generation.
enum class GenerationAdvance { PerSuccess, PerAttempt };

// Full: a collision destroys every reception. Capture: sinks that hear only
// one of the colliding sources still receive its packet.
enum class CollisionScope { Full, Capture };

struct SimConfig {
  mac::StrategyKind strategy = mac::StrategyKind::SimpleDag;
  Topology topology = Topology::standard();
  PhyConfig phy;
  EnergyModel energy;
  double a = 0.7;
  double b = 1.0;
  double p_poll = 0.5;
  bool alternating_poll = false;
  std::uint32_t cw_max = mac::kCwMaxDefault;
  CollisionScope collision = CollisionScope::Full;
  GenerationAdvance advance = GenerationAdvance::PerSuccess;
  // Carry real payload bytes and decode them; otherwise only coefficient
  // vectors are simulated, which yields the same rank dynamics.
  bool carry_payload = false;
  // Overrides the equilibrium transmit probability of the DAG strategies.
  std::optional<double> transmit_probability;
  std::uint64_t slot_cap = 100'000'000;

  void validate() const;
};

enum class ChannelResult { Idle, Success, Collision, Poll };
std::string_view to_string(ChannelResult r) noexcept;

// What a node's radio did for the duration of a round.
enum class NodeMode : char { Transmit = 'T', Receive = 'R', Idle = 'I' };

// Per-source decision in a round. Withdrawn sources do not contend.
enum class SourceAction { Transmit, Wait, AwaitPoll, Withdrawn };
std::string_view to_string(SourceAction a) noexcept;

struct SlotOutcome {
  std::uint64_t round = 0;
  std::uint64_t start_slot = 0;
  std::uint64_t slots = 0;
  ChannelResult result = ChannelResult::Idle;
  int source = -1;      // sender on Success/Poll
  int generation = -1;  // generation sent on Success/Poll
  std::vector<SourceAction> actions;
  std::vector<std::size_t> impacts;
  std::vector<std::uint8_t> innovative;  // per sink, 1 if rank grew
  std::vector<NodeMode> modes;           // per node, sources first
  std::vector<double> energy_j;          // per node, charged this round
};

class Simulator {
 public:
  Simulator(SimConfig config, std::uint64_t seed);

  bool done() const noexcept;

  // Resolves one contention round. Throws std::logic_error once done.
  SlotOutcome step();

  // Covered sinks still short of full rank in the source's next generation.
  std::size_t impact(std::size_t source) const;

  metrics::RunRecord record() const;

  const SimConfig& config() const noexcept { return config_; }
  double transmit_probability() const noexcept { return s_star_; }
  std::uint64_t slots() const noexcept { return slots_; }
  std::uint64_t tx_slots() const noexcept { return tx_slots_; }
  const rlnc::Decoder& sink(std::size_t i) const { return sinks_.at(i); }
  std::size_t next_generation(std::size_t source) const { return next_gen_.at(source); }
  const mac::BoMacState& backoff(std::size_t source) const { return backoff_.at(source); }
  const mac::DelayBoundState& delay_bound(std::size_t source) const { return delay_.at(source); }

  // With carry_payload, true when every sink decoded every generation byte-exact.
  bool verify_decoded() const;

 private:
  bool covered_incomplete(std::size_t source) const;
  void deliver(std::size_t source, SlotOutcome& out, const std::vector<bool>& receivers);

  SimConfig config_;
  Rng rng_;
  std::optional<rlnc::DataSet> data_;
  std::vector<rlnc::Decoder> sinks_;
  std::vector<std::size_t> next_gen_;
  std::vector<mac::BoMacState> backoff_;
  std::vector<mac::DelayBoundState> delay_;
  mac::PollScheduler poller_;
  double s_star_ = 0.0;
  std::uint64_t tx_slots_ = 1;
  std::uint64_t slots_ = 0;
  std::uint64_t rounds_ = 0;
  std::vector<double> energy_;
  metrics::SlotHistogram histogram_;
  std::uint64_t innovative_ = 0;
  std::uint64_t non_innovative_ = 0;
  std::size_t complete_sinks_ = 0;
};

class SlotLogWriter;

// Steps a fresh simulator to completion. Throws std::runtime_error when the
// slot cap is exceeded.
metrics::RunRecord run(const SimConfig& config, std::uint64_t seed, SlotLogWriter* log = nullptr);

}  // namespace ncdag::engine
