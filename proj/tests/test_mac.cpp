#include <doctest.h>

#include <array>
#include <bit>

#include "ncdag/mac.hpp"

using namespace ncdag;
using namespace ncdag::mac;

TEST_CASE("strategy names") {
  for (auto k : {StrategyKind::SimpleDag, StrategyKind::DelayBoundedDag, StrategyKind::BoMac}) {
    CHECK(parse_strategy(to_string(k)) == k);
  }
  CHECK_FALSE(parse_strategy("aloha").has_value());
}

TEST_CASE("simple decision") {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    REQUIRE(decide_simple(1.0, rng) == Action::Transmit);
    REQUIRE(decide_simple(0.0, rng) == Action::Wait);
  }
  int tx = 0;
  constexpr int kDraws = 100000;
  for (int i = 0; i < kDraws; ++i) tx += decide_simple(0.41176, rng) == Action::Transmit;
  CHECK(static_cast<double>(tx) / kDraws == doctest::Approx(0.412).epsilon(0.005 / 0.412));
}

TEST_CASE("two independent Bernoulli sources give the closed-form outcome mix") {
  Rng rng(2);
  const double s = 0.7 / 1.7;
  int coll = 0, succ = 0, idle = 0;
  constexpr int kRounds = 200000;
  for (int i = 0; i < kRounds; ++i) {
    const int n = (decide_simple(s, rng) == Action::Transmit) + (decide_simple(s, rng) == Action::Transmit);
    coll += n == 2;
    succ += n == 1;
    idle += n == 0;
  }
  CHECK(std::abs(coll / double(kRounds) - s * s) < 0.01);
  CHECK(std::abs(succ / double(kRounds) - 2 * s * (1 - s)) < 0.01);
  CHECK(std::abs(idle / double(kRounds) - (1 - s) * (1 - s)) < 0.01);
}

TEST_CASE("delay-bounded decision and failure counter") {
  Rng rng(3);
  int tx = 0;
  for (int i = 0; i < 20000; ++i) {
    const auto a = decide_delay_bounded({0}, 0.25, rng);
    REQUIRE(a != Action::AwaitPoll);
    tx += a == Action::Transmit;
  }
  CHECK(tx / 20000.0 == doctest::Approx(0.25).epsilon(0.04));
  CHECK(decide_delay_bounded({1}, 1.0, rng) == Action::Transmit);
  CHECK(decide_delay_bounded({2}, 1.0, rng) == Action::AwaitPoll);
  CHECK(decide_delay_bounded({2}, 0.0, rng) == Action::AwaitPoll);

  CHECK(update_failures({0}, false).consecutive_failures == 1);
  CHECK(update_failures({1}, false).consecutive_failures == 2);
  CHECK(update_failures({2}, false).consecutive_failures == 2);
  CHECK(update_failures({2}, true).consecutive_failures == 0);
  CHECK(update_failures({1}, true).consecutive_failures == 0);
}

TEST_CASE("poll fairness") {
  Rng rng(4);
  PollScheduler fair(0.5);
  int first = 0;
  for (int i = 0; i < 10000; ++i) first += fair.select(rng) == 0;
  CHECK(std::abs(first / 10000.0 - 0.5) < 0.01);

  PollScheduler alt(0.5, true);
  CHECK(alt.select(rng) == 0);
  CHECK(alt.select(rng) == 1);
  CHECK(alt.select(rng) == 0);
}

TEST_CASE("BO-MAC state machine") {
  Rng rng(5);
  std::array<int, 32> seen{};
  double sum = 0;
  for (int i = 0; i < 32000; ++i) {
    const auto s = bomac_init(rng);
    REQUIRE(s.cw == 32);
    REQUIRE(s.backoff_counter < 32);
    ++seen[s.backoff_counter];
    sum += s.backoff_counter;
  }
  for (int c : seen) CHECK(c > 800);
  CHECK(sum / 32000 == doctest::Approx(15.5).epsilon(0.02));

  BoMacState s{32, 0};
  CHECK(bomac_decide(s) == Action::Transmit);
  s = bomac_update(s, BackoffEvent::Collision, rng);
  CHECK(s.cw == 64);
  CHECK(s.backoff_counter < 64);
  for (int i = 0; i < 10; ++i) s = bomac_update(s, BackoffEvent::Collision, rng);
  CHECK(s.cw == 1024);
  s = bomac_update(s, BackoffEvent::Collision, rng, 256);
  CHECK(s.cw == 256);
  s = bomac_update(s, BackoffEvent::Success, rng);
  CHECK(s.cw == 32);
  CHECK(s.backoff_counter < 32);

  BoMacState w{64, 3};
  CHECK(bomac_decide(w) == Action::Wait);
  w = bomac_update(w, BackoffEvent::Idle, rng);
  CHECK(w.backoff_counter == 2);
  w = bomac_update(w, BackoffEvent::OtherBusy, rng);
  CHECK(w.backoff_counter == 1);
  CHECK(w.cw == 64);
  w = bomac_update(w, BackoffEvent::Idle, rng);
  w = bomac_update(w, BackoffEvent::Idle, rng);
  CHECK(w.backoff_counter == 0);
}

TEST_CASE("BO-MAC invariants under random event sequences") {
  Rng rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = bomac_init(rng);
    for (int i = 0; i < 500; ++i) {
      const auto ev = static_cast<BackoffEvent>(rng.below(4));
      const auto before = s;
      s = bomac_update(s, ev, rng);
      REQUIRE(std::has_single_bit(s.cw));
      REQUIRE(s.cw >= 32);
      REQUIRE(s.cw <= 1024);
      REQUIRE(s.backoff_counter < s.cw);
      if (ev == BackoffEvent::Success) REQUIRE(s.cw == 32);
      if (ev == BackoffEvent::Idle || ev == BackoffEvent::OtherBusy) {
        REQUIRE(s.cw == before.cw);
        REQUIRE(s.backoff_counter == (before.backoff_counter == 0 ? 0 : before.backoff_counter - 1));
      }
    }
  }
}
