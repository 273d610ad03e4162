#include "ncdag/game.hpp"

#include <algorithm>
#include <cmath>

namespace ncdag::game {

namespace {

void require_ratios(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("cost ratios a and b must be positive");
}

bool in_unit(double x) { return x >= 0.0 && x <= 1.0; }

// Player one's view: `own` is the player's transmit probability.
double simple_cost(double own, double other, const GameParams& g) {
  const double own_w = 1.0 - own;
  const double other_w = 1.0 - other;
  return own * other_w * g.send + own * other * (g.send + g.collision()) + own_w * other_w * g.wait();
}

double delay_bounded_cost(double own, double other, const GameParams& g) {
  const double s1 = own;
  const double s2 = other;
  const double w1 = 1.0 - s1;
  const double w2 = 1.0 - s2;
  const double es = g.send;
  const double ec = g.collision();
  const double ew = g.wait();

  const double first = s1 * w2 * es + s1 * s2 * (es + ec) + w1 * w2 * ew;

  const double second = w1 * w2 * w2 * s1 * es + w1 * w2 * s1 * s2 * (es + ec) + w1 * w1 * w2 * w2 * ew +
                        s1 * s1 * s2 * w2 * es + s1 * s1 * s2 * s2 * (es + ec) + s1 * s2 * w1 * w2 * ew;

  const double third = w1 * w1 * w2 * w2 * g.p_poll * es + s1 * s1 * s2 * s2 * g.p_poll * es +
                       2.0 * s1 * s2 * w1 * w2 * g.p_poll * es;

  return first + second + third;
}

}  // namespace

GameParams GameParams::from_ratios(double send, double a, double b, double total, double p_poll) {
  GameParams g{send, a, b, total, p_poll};
  g.validate();
  return g;
}

GameParams GameParams::from_energies(double send, double wait, double collision, double total, double p_poll) {
  if (!(send > 0.0)) throw std::invalid_argument("send energy must be positive");
  return from_ratios(send, wait / send, collision / send, total, p_poll);
}

void GameParams::validate() const {
  require_ratios(a, b);
  if (!(send > 0.0) || !(total > 0.0)) throw std::invalid_argument("game energies must be positive");
  if (!in_unit(p_poll)) throw std::invalid_argument("p_poll must lie in [0, 1]");
}

void StrategyProfile::validate() const {
  if (!in_unit(s1) || !in_unit(s2)) throw std::invalid_argument("strategy probabilities must lie in [0, 1]");
}

double expected_energy_simple(const StrategyProfile& p, const GameParams& g, Player player) {
  p.validate();
  return player == Player::One ? simple_cost(p.s1, p.s2, g) : simple_cost(p.s2, p.s1, g);
}

double simple_cost_slope_s2(double s1, const GameParams& g) {
  return g.send * (g.a * (s1 - 1.0) + g.b * s1);
}

double utility(const GameParams& g, double expected_energy) {
  if (!(expected_energy > 0.0)) throw std::domain_error("expected energy must be positive");
  return g.total / expected_energy;
}

double nep_simple(double a, double b) {
  require_ratios(a, b);
  return a / (a + b);
}

double expected_energy_delay_bounded(const StrategyProfile& p, const GameParams& g, Player player) {
  p.validate();
  return player == Player::One ? delay_bounded_cost(p.s1, p.s2, g) : delay_bounded_cost(p.s2, p.s1, g);
}

double best_response_residual(const StrategyProfile& p, double a, double b) {
  const double s1 = p.s1;
  const double s2 = p.s2;
  const double w1 = 1.0 - s1;
  const double w2 = 1.0 - s2;
  return w2 * b + 2.0 * s2 * b - w2 * a * b - w2 * w2 * s1 * b - w1 * w2 * w2 * b +
         2.0 * w1 * w2 * s2 * b - 2.0 * w1 * w2 * w2 * a * b + 6.0 * s1 * s2 * s2 * b +
         s2 * w1 * w2 * a * b - s1 * s2 * w2 * a * b;
}

double nep_delay_bounded(double a, double b, double tol) {
  require_ratios(a, b);
  if (!(tol > 0.0) || !(tol < 0.01)) throw std::invalid_argument("tolerance must lie in (0, 0.01)");

  auto diag = [&](double s) { return best_response_residual({s, s}, a, b); };

  // Locate the first sign change on a grid over the open interval, then bisect.
  constexpr int kCells = 1000;
  constexpr double kEdge = 1e-9;
  double lo = kEdge;
  double f_lo = diag(lo);
  for (int i = 1; i <= kCells; ++i) {
    const double hi = i == kCells ? 1.0 - kEdge : static_cast<double>(i) / kCells;
    const double f_hi = diag(hi);
    if (f_lo == 0.0) return lo;
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      double l = lo;
      double h = hi;
      const bool rising = f_lo < 0.0;
      while (h - l > tol) {
        const double m = 0.5 * (l + h);
        if ((diag(m) < 0.0) == rising) {
          l = m;
        } else {
          h = m;
        }
      }
      return 0.5 * (l + h);
    }
    lo = hi;
    f_lo = f_hi;
  }
  throw NoFixedPointError();
}

double numeric_best_response(double s2, const GameParams& g) {
  if (!in_unit(s2)) throw std::invalid_argument("s2 must lie in [0, 1]");
  auto cost = [&](double s1) { return delay_bounded_cost(s1, s2, g); };

  constexpr int kGrid = 10000;
  int best = 0;
  double best_val = cost(0.0);
  for (int i = 1; i <= kGrid; ++i) {
    const double v = cost(static_cast<double>(i) / kGrid);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }

  double lo = std::max(0, best - 1) / static_cast<double>(kGrid);
  double hi = std::min(kGrid, best + 1) / static_cast<double>(kGrid);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = cost(x1);
  double f2 = cost(x2);
  while (hi - lo > 1e-12) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = cost(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = cost(x2);
    }
  }
  const double refined = 0.5 * (lo + hi);
  const double grid_point = static_cast<double>(best) / kGrid;
  return cost(refined) < best_val ? refined : grid_point;
}

}  // namespace ncdag::game
