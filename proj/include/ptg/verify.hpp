#pragma once

#include "ptg/cost_function.hpp"
#include "ptg/game.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptg {

struct BellmanVerdict {
  std::size_t location = 0;
  Rational nu;
  bool ok = true;
  ExtValue actual;    // value claimed at (location, nu)
  ExtValue expected;  // best one-step lookahead
  std::optional<std::size_t> witness;  // transition achieving `expected`
  Rational witness_delay;
};

// One-step optimality at clock value nu for every non-final location whose
// value is defined there. Delays range over guard ends and target breakpoints,
// which is exact for piecewise-affine values and closed guards.
std::vector<BellmanVerdict> bellman_check(const Game& g, const std::vector<ValueFunction>& values,
                                          const Rational& nu);

// The same check on the region game, where every guard is closed.
std::vector<BellmanVerdict> bellman_check_regions(const Game& g, const std::vector<ValueFunction>& values,
                                                  const Rational& nu);

// Slope bound for non-urgent locations of an SPTG: Min >= -rate, Max <= -rate.
std::vector<std::string> check_rate_bounds(const Game& g, const std::vector<ValueFunction>& values);

// max(largest |rate|, largest |final slope|)
Rational lipschitz_constant(const Game& g);
std::vector<std::string> check_lipschitz(const Game& g, const std::vector<ValueFunction>& values);

// Points worth checking: breakpoints, midpoints between them, and a uniform grid of n steps.
std::vector<Rational> sample_points(const std::vector<ValueFunction>& values, const Rational& lo, const Rational& hi,
                                    std::size_t grid);

}  // namespace ptg
