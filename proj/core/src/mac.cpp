#include "ncdag/mac.hpp"

#include <algorithm>

namespace ncdag::mac {

std::string_view to_string(StrategyKind k) noexcept {
  switch (k) {
    case StrategyKind::SimpleDag: return "simple";
    case StrategyKind::DelayBoundedDag: return "delay-bounded";
    case StrategyKind::BoMac: return "bo-mac";
  }
  return "unknown";
}

std::optional<StrategyKind> parse_strategy(std::string_view name) noexcept {
  if (name == "simple") return StrategyKind::SimpleDag;
  if (name == "delay-bounded") return StrategyKind::DelayBoundedDag;
  if (name == "bo-mac") return StrategyKind::BoMac;
  return std::nullopt;
}

std::string_view to_string(Action a) noexcept {
  switch (a) {
    case Action::Transmit: return "T";
    case Action::Wait: return "W";
    case Action::AwaitPoll: return "P";
  }
  return "?";
}

Action decide_simple(double s_star, Rng& rng) { return rng.bernoulli(s_star) ? Action::Transmit : Action::Wait; }

Action decide_delay_bounded(const DelayBoundState& state, double s_star, Rng& rng) {
  if (state.consecutive_failures >= kFailuresBeforePoll) return Action::AwaitPoll;
  return decide_simple(s_star, rng);
}

DelayBoundState update_failures(DelayBoundState state, bool slot_was_successful) noexcept {
  if (slot_was_successful) return {0};
  return {std::min(state.consecutive_failures + 1, kFailuresBeforePoll)};
}

int PollScheduler::select(Rng& rng) {
  if (alternating_) {
    const int chosen = next_;
    next_ ^= 1;
    return chosen;
  }
  return rng.bernoulli(p_poll_) ? 0 : 1;
}

BoMacState bomac_init(Rng& rng) {
  return {kCwMin, static_cast<std::uint32_t>(rng.below(kCwMin))};
}

Action bomac_decide(const BoMacState& state) noexcept {
  return state.backoff_counter == 0 ? Action::Transmit : Action::Wait;
}

BoMacState bomac_update(BoMacState state, BackoffEvent event, Rng& rng, std::uint32_t cw_max) {
  switch (event) {
    case BackoffEvent::Idle:
    case BackoffEvent::OtherBusy:
      if (state.backoff_counter > 0) --state.backoff_counter;
      break;
    case BackoffEvent::Collision:
      state.cw = std::min(state.cw * 2, std::max(cw_max, kCwMin));
      state.backoff_counter = static_cast<std::uint32_t>(rng.below(state.cw));
      break;
    case BackoffEvent::Success:
      state.cw = kCwMin;
      state.backoff_counter = static_cast<std::uint32_t>(rng.below(state.cw));
      break;
  }
  return state;
}

}  // namespace ncdag::mac
