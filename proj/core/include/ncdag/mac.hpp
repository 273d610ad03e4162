#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "ncdag/random.hpp"

// Per-slot channel access rules for a contending source.
namespace ncdag::mac {

enum class StrategyKind { SimpleDag, DelayBoundedDag, BoMac };

std::string_view to_string(StrategyKind k) noexcept;
// Accepts "simple", "delay-bounded" and "bo-mac".
std::optional<StrategyKind> parse_strategy(std::string_view name) noexcept;

enum class Action { Transmit, Wait, AwaitPoll };

std::string_view to_string(Action a) noexcept;

// Bernoulli(s_star) transmit decision.
Action decide_simple(double s_star, Rng& rng);

// Consecutive unsuccessful contention rounds seen on the channel, in {0, 1, 2}.
struct DelayBoundState {
  int consecutive_failures = 0;
};

inline constexpr int kFailuresBeforePoll = 2;

// AwaitPoll once two consecutive rounds failed; otherwise decide_simple.
Action decide_delay_bounded(const DelayBoundState& state, double s_star, Rng& rng);

// Success (a poll always succeeds) resets to 0; a failed round counts up to 2.
DelayBoundState update_failures(DelayBoundState state, bool slot_was_successful) noexcept;

// Picks the source the controller polls. Memoryless with probability p_poll
// for source 0, or strict alternation when configured.
class PollScheduler {
 public:
  explicit PollScheduler(double p_poll = 0.5, bool alternating = false) : p_poll_(p_poll), alternating_(alternating) {}

  int select(Rng& rng);

 private:
  double p_poll_;
  bool alternating_;
  int next_ = 0;
};

inline constexpr std::uint32_t kCwMin = 32;
inline constexpr std::uint32_t kCwMaxDefault = 1024;

struct BoMacState {
  std::uint32_t cw = kCwMin;
  std::uint32_t backoff_counter = 0;
};

enum class BackoffEvent { Success, Collision, OtherBusy, Idle };

// Fresh state: cw = 32, counter uniform in [0, 31].
BoMacState bomac_init(Rng& rng);

// Transmit iff the counter has reached zero.
Action bomac_decide(const BoMacState& state) noexcept;

// Idle/OtherBusy decrement (floor 0); Collision doubles cw up to cw_max and
// redraws; Success resets cw to 32 and redraws.
BoMacState bomac_update(BoMacState state, BackoffEvent event, Rng& rng, std::uint32_t cw_max = kCwMaxDefault);

}  // namespace ncdag::mac
