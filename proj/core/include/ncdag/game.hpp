#pragma once

#include <stdexcept>

// Expected-energy cost functions of the two-source dissemination access game
// and their mixed-strategy equilibria.
namespace ncdag::game {

// Energy constants in joules. The wait and collision costs are stored as
// ratios of the send cost, so scaling every energy by the same factor leaves
// a and b (and with them both equilibria) unchanged.
struct GameParams {
  double send = 9.5e-4;  // E_S, one packet transmission
  double a = 0.7;        // E_W / E_S, both sources wait
  double b = 1.0;        // E_COST / E_S, penalty on top of E_S when both transmit
  double total = 100.0;  // E_TOTAL, battery budget per node
  double p_poll = 0.5;   // controller poll probability per source

  static GameParams from_ratios(double send, double a, double b, double total = 100.0, double p_poll = 0.5);
  static GameParams from_energies(double send, double wait, double collision, double total = 100.0,
                                  double p_poll = 0.5);

  double wait() const noexcept { return a * send; }
  double collision() const noexcept { return b * send; }

  // Throws std::invalid_argument on a non-positive energy or ratio, or p_poll outside [0, 1].
  void validate() const;
};

// Transmit probabilities of the two sources.
struct StrategyProfile {
  double s1 = 0.0;
  double s2 = 0.0;

  StrategyProfile swapped() const noexcept { return {s2, s1}; }
  void validate() const;
};

enum class Player { One = 1, Two = 2 };

// Single-slot expected cost:
//   s1 (1-s2) E_S + s1 s2 (E_S + E_COST) + (1-s1)(1-s2) E_W
// Player two is the index swap.
double expected_energy_simple(const StrategyProfile& p, const GameParams& g, Player player);

// d E[E_1] / d s2 of the single-slot cost. Its zero in s1 is the
// indifference point a / (a + b).
double simple_cost_slope_s2(double s1, const GameParams& g);

// Lifetime utility E_TOTAL / E[E]. Throws std::domain_error when expected_energy <= 0.
double utility(const GameParams& g, double expected_energy);

// Symmetric mixed equilibrium a / (a + b) of the single-slot game.
double nep_simple(double a, double b);

// Three-slot expected cost with controller polling after two failed slots.
double expected_energy_delay_bounded(const StrategyProfile& p, const GameParams& g, Player player);

// Best-response condition for s1 against s2, the ten-term polynomial as
// published. Zero means s1 is a best response to s2.
double best_response_residual(const StrategyProfile& p, double a, double b);

class NoFixedPointError : public std::runtime_error {
 public:
  NoFixedPointError() : std::runtime_error("no symmetric fixed point") {}
};

inline constexpr double kDefaultTolerance = 1e-9;

// Symmetric root s* of best_response_residual(s, s) on (0, 1), by bisection.
double nep_delay_bounded(double a, double b, double tol = kDefaultTolerance);

// argmin over s1 in [0, 1] of expected_energy_delay_bounded(s1, s2), found by
// a dense scan followed by golden-section refinement around the best cell.
double numeric_best_response(double s2, const GameParams& g);

}  // namespace ncdag::game
