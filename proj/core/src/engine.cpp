#include "ncdag/engine.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ncdag/game.hpp"
#include "ncdag/slot_log.hpp"

namespace ncdag::engine {

Topology Topology::standard() { return Topology{6, {{0, 1, 2, 3}, {2, 3, 4, 5}}}; }

Topology Topology::single_source(std::size_t num_sinks) {
  Topology t{num_sinks, {{}}};
  for (std::size_t i = 0; i < num_sinks; ++i) t.coverage[0].push_back(i);
  return t;
}

bool Topology::covers(std::size_t source, std::size_t sink) const {
  const auto& c = coverage.at(source);
  return std::find(c.begin(), c.end(), sink) != c.end();
}

void Topology::validate() const {
  if (coverage.empty() || coverage.size() > 2) throw std::invalid_argument("topology needs one or two sources");
  if (num_sinks == 0) throw std::invalid_argument("topology needs at least one sink");
  std::vector<bool> seen(num_sinks, false);
  for (const auto& c : coverage) {
    for (auto s : c) {
      if (s >= num_sinks) throw std::invalid_argument("coverage names an unknown sink");
      seen[s] = true;
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
    throw std::invalid_argument("every sink must be covered by some source");
  }
}

std::uint64_t PhyConfig::tx_slots() const {
  const double bits = static_cast<double>(payload_len + header_len) * 8.0;
  const double slots = bits / (rate_mbps * slot_us);
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(slots - 1e-9)));
}

void PhyConfig::validate() const {
  if (!(slot_us > 0.0) || !(rate_mbps > 0.0)) throw std::invalid_argument("slot time and rate must be positive");
  if (payload_len == 0) throw std::invalid_argument("payload length must be positive");
}

void EnergyModel::validate() const {
  if (!(transmit_w > 0.0) || !(receive_w > 0.0) || !(idle_w > 0.0) || !(budget_j > 0.0)) {
    throw std::invalid_argument("power levels must be positive");
  }
}

void SimConfig::validate() const {
  topology.validate();
  phy.validate();
  energy.validate();
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("cost ratios a and b must be positive");
  if (!(p_poll >= 0.0 && p_poll <= 1.0)) throw std::invalid_argument("p_poll must lie in [0, 1]");
  if (cw_max < mac::kCwMin) throw std::invalid_argument("cw_max must be at least 32");
  if (transmit_probability && !(*transmit_probability >= 0.0 && *transmit_probability <= 1.0)) {
    throw std::invalid_argument("transmit probability must lie in [0, 1]");
  }
  if (slot_cap == 0) throw std::invalid_argument("slot cap must be positive");
}

std::string_view to_string(ChannelResult r) noexcept {
  switch (r) {
    case ChannelResult::Idle: return "idle";
    case ChannelResult::Success: return "success";
    case ChannelResult::Collision: return "collision";
    case ChannelResult::Poll: return "poll";
  }
  return "unknown";
}

std::string_view to_string(SourceAction a) noexcept {
  switch (a) {
    case SourceAction::Transmit: return "T";
    case SourceAction::Wait: return "W";
    case SourceAction::AwaitPoll: return "P";
    case SourceAction::Withdrawn: return "-";
  }
  return "?";
}

namespace {

double equilibrium_for(const SimConfig& c) {
  if (c.transmit_probability) return *c.transmit_probability;
  switch (c.strategy) {
    case mac::StrategyKind::SimpleDag: return game::nep_simple(c.a, c.b);
    case mac::StrategyKind::DelayBoundedDag: return game::nep_delay_bounded(c.a, c.b);
    case mac::StrategyKind::BoMac: return 0.0;
  }
  return 0.0;
}

SourceAction from_mac(mac::Action a) {
  switch (a) {
    case mac::Action::Transmit: return SourceAction::Transmit;
    case mac::Action::Wait: return SourceAction::Wait;
    case mac::Action::AwaitPoll: return SourceAction::AwaitPoll;
  }
  return SourceAction::Wait;
}

}  // namespace

Simulator::Simulator(SimConfig config, std::uint64_t seed)
    : config_(std::move(config)),
      rng_(Rng::derive(seed, 0)),
      poller_(config_.p_poll, config_.alternating_poll) {
  config_.validate();
  const auto& topo = config_.topology;
  s_star_ = equilibrium_for(config_);
  tx_slots_ = config_.phy.tx_slots();
  if (config_.carry_payload) {
    Rng data_rng = Rng::derive(seed, 1);
    data_ = rlnc::DataSet::random(config_.phy.payload_len, data_rng);
  }
  sinks_.assign(topo.num_sinks, rlnc::Decoder(config_.carry_payload));
  next_gen_.assign(topo.num_sources(), 0);
  delay_.assign(topo.num_sources(), mac::DelayBoundState{});
  for (std::size_t s = 0; s < topo.num_sources(); ++s) backoff_.push_back(mac::bomac_init(rng_));
  energy_.assign(topo.num_nodes(), 0.0);
}

bool Simulator::done() const noexcept { return complete_sinks_ == sinks_.size(); }

bool Simulator::covered_incomplete(std::size_t source) const {
  const auto& c = config_.topology.coverage[source];
  return std::any_of(c.begin(), c.end(), [&](std::size_t k) { return !sinks_[k].complete(); });
}

std::size_t Simulator::impact(std::size_t source) const {
  const auto gen = next_gen_.at(source);
  const auto& c = config_.topology.coverage[source];
  return static_cast<std::size_t>(
      std::count_if(c.begin(), c.end(), [&](std::size_t k) { return !sinks_[k].decodable(gen); }));
}

void Simulator::deliver(std::size_t source, SlotOutcome& out, const std::vector<bool>& receivers) {
  const auto gen = static_cast<std::uint8_t>(next_gen_[source]);
  const rlnc::CodedPacket packet =
      data_ ? rlnc::encode(data_->generation(gen), rng_) : rlnc::draw_coefficients(gen, rng_);
  for (auto k : config_.topology.coverage[source]) {
    if (!receivers[k]) continue;
    if (sinks_[k].insert(packet)) {
      ++innovative_;
      out.innovative[k] = 1;
      if (sinks_[k].complete()) ++complete_sinks_;
    } else {
      ++non_innovative_;
    }
  }
}

SlotOutcome Simulator::step() {
  if (done()) throw std::logic_error("dissemination already complete");

  const auto& topo = config_.topology;
  const std::size_t n_src = topo.num_sources();

  SlotOutcome out;
  out.round = rounds_;
  out.start_slot = slots_;
  out.actions.assign(n_src, SourceAction::Withdrawn);
  out.innovative.assign(topo.num_sinks, 0);
  for (std::size_t s = 0; s < n_src; ++s) out.impacts.push_back(impact(s));

  std::vector<std::size_t> contenders;
  for (std::size_t s = 0; s < n_src; ++s) {
    if (covered_incomplete(s)) contenders.push_back(s);
  }

  // Sinks still collecting at the start of the round.
  std::vector<bool> listening(topo.num_sinks);
  for (std::size_t k = 0; k < topo.num_sinks; ++k) listening[k] = !sinks_[k].complete();

  std::vector<std::size_t> transmitters;
  bool polled = false;
  if (contenders.size() == 1) {
    // A lone contender has nobody to resolve against.
    transmitters.push_back(contenders.front());
    out.actions[contenders.front()] = SourceAction::Transmit;
  } else {
    for (auto s : contenders) {
      mac::Action a = mac::Action::Wait;
      switch (config_.strategy) {
        case mac::StrategyKind::SimpleDag: a = mac::decide_simple(s_star_, rng_); break;
        case mac::StrategyKind::DelayBoundedDag: a = mac::decide_delay_bounded(delay_[s], s_star_, rng_); break;
        case mac::StrategyKind::BoMac: a = mac::bomac_decide(backoff_[s]); break;
      }
      out.actions[s] = from_mac(a);
      if (a == mac::Action::Transmit) transmitters.push_back(s);
      if (a == mac::Action::AwaitPoll) polled = true;
    }
    if (polled) {
      transmitters.assign(1, static_cast<std::size_t>(poller_.select(rng_)));
    }
  }

  if (transmitters.empty()) {
    out.result = ChannelResult::Idle;
    out.slots = 1;
  } else if (transmitters.size() == 1) {
    out.result = polled ? ChannelResult::Poll : ChannelResult::Success;
    out.slots = tx_slots_;
  } else {
    out.result = ChannelResult::Collision;
    out.slots = tx_slots_;
  }

  // Radio modes and energy, decided on the state at the start of the round.
  out.modes.assign(topo.num_nodes(), NodeMode::Idle);
  for (auto s : transmitters) {
    out.modes[s] = NodeMode::Transmit;
    for (auto k : topo.coverage[s]) {
      if (listening[k]) out.modes[n_src + k] = NodeMode::Receive;
    }
  }
  const double seconds = static_cast<double>(out.slots) * config_.phy.slot_seconds();
  out.energy_j.resize(topo.num_nodes());
  for (std::size_t i = 0; i < topo.num_nodes(); ++i) {
    double w = config_.energy.idle_w;
    if (out.modes[i] == NodeMode::Transmit) w = config_.energy.transmit_w;
    if (out.modes[i] == NodeMode::Receive) w = config_.energy.receive_w;
    out.energy_j[i] = w * seconds;
    energy_[i] += out.energy_j[i];
  }

  // Deliveries and generation bookkeeping.
  switch (out.result) {
    case ChannelResult::Success:
    case ChannelResult::Poll: {
      const auto s = transmitters.front();
      out.source = static_cast<int>(s);
      out.generation = static_cast<int>(next_gen_[s]);
      deliver(s, out, listening);
      next_gen_[s] = (next_gen_[s] + 1) % rlnc::kGenerationCount;
      break;
    }
    case ChannelResult::Collision:
      if (config_.collision == CollisionScope::Capture) {
        for (auto s : transmitters) {
          std::vector<bool> clear = listening;
          for (auto other : transmitters) {
            if (other == s) continue;
            for (auto k : topo.coverage[other]) clear[k] = false;
          }
          deliver(s, out, clear);
        }
      }
      if (config_.advance == GenerationAdvance::PerAttempt) {
        for (auto s : transmitters) next_gen_[s] = (next_gen_[s] + 1) % rlnc::kGenerationCount;
      }
      break;
    case ChannelResult::Idle: break;
  }

  // Strategy state.
  const bool success = out.result == ChannelResult::Success || out.result == ChannelResult::Poll;
  if (contenders.size() > 1) {
    for (auto s : contenders) {
      delay_[s] = mac::update_failures(delay_[s], success);
      mac::BackoffEvent ev = mac::BackoffEvent::Idle;
      if (out.result == ChannelResult::Collision) {
        ev = mac::BackoffEvent::Collision;
      } else if (success) {
        ev = static_cast<int>(s) == out.source ? mac::BackoffEvent::Success : mac::BackoffEvent::OtherBusy;
      }
      if (config_.strategy == mac::StrategyKind::BoMac) {
        backoff_[s] = mac::bomac_update(backoff_[s], ev, rng_, config_.cw_max);
      }
    }
  } else {
    for (auto s : contenders) delay_[s] = mac::update_failures(delay_[s], success);
  }

  switch (out.result) {
    case ChannelResult::Idle: ++histogram_.idle; break;
    case ChannelResult::Success: ++histogram_.success; break;
    case ChannelResult::Collision: ++histogram_.collision; break;
    case ChannelResult::Poll: ++histogram_.poll; break;
  }
  slots_ += out.slots;
  ++rounds_;
  return out;
}

metrics::RunRecord Simulator::record() const {
  metrics::RunRecord r;
  r.completion_slots = slots_;
  r.completion_time_us = static_cast<double>(slots_) * config_.phy.slot_us;
  r.num_sources = config_.topology.num_sources();
  r.energy_per_node = energy_;
  r.histogram = histogram_;
  r.innovative_deliveries = innovative_;
  r.non_innovative_receptions = non_innovative_;
  r.payload_len = config_.phy.payload_len;
  return r;
}

bool Simulator::verify_decoded() const {
  if (!data_ || !done()) return false;
  for (const auto& sink : sinks_) {
    for (std::size_t g = 0; g < rlnc::kGenerationCount; ++g) {
      if (!(sink.decode(g) == data_->generation(g).packets)) return false;
    }
  }
  return true;
}

metrics::RunRecord run(const SimConfig& config, std::uint64_t seed, SlotLogWriter* log) {
  Simulator sim(config, seed);
  while (!sim.done()) {
    if (sim.slots() > config.slot_cap) throw std::runtime_error("non-terminating configuration");
    const auto outcome = sim.step();
    if (log != nullptr) log->write(outcome);
  }
  return sim.record();
}

}  // namespace ncdag::engine
