#pragma once

#include "ptg/game.hpp"
#include "ptg/solution.hpp"

#include <optional>
#include <vector>

namespace ptg {

struct PruneResult {
  Game game;                                      // finite-valued part
  std::vector<std::size_t> kept_locations;        // pruned index -> original index
  std::vector<std::size_t> kept_transitions;      // pruned index -> original index
  std::vector<std::optional<ExtValue>> infinite;  // original index -> infinite value, if any
};

// Removes the locations whose value is +inf or -inf (read off the all-urgent
// game at the clock bound) and every transition touching them. Finals stay.
PruneResult prune_infinite(const Game& g);

// The r-SPTG in which each non-urgent location l may stop and collect
// (r - x) * rate(l) + x_values[l] through a fresh final clone.
struct WaitingGame {
  Game game;
  std::vector<std::optional<std::size_t>> clone;  // original location -> its final clone
  std::size_t base_locations = 0;
  std::size_t base_transitions = 0;
};

WaitingGame waiting(const Game& g, const Rational& r, const std::vector<std::optional<Rational>>& x_values);
Game make_urgent(const Game& g, const std::vector<bool>& which);

// Non-urgent Min/Max locations whose chord over [a, b] violates the rate bound:
// Min needs (f(b) - x(a)) / (b - a) >= -rate, Max needs it <= -rate.
std::vector<std::size_t> slope_test(const Game& g, const std::vector<ExtValue>& at_b,
                                    const std::vector<ExtValue>& at_a, const Rational& a, const Rational& b);

struct SolveOptions {
  bool strategies = true;
  bool speculative = true;  // evaluate candidate cutpoints in parallel batches
  bool check_budget = true;
};

// Values (and optimal strategies) of an SPTG with clock bound 1 whose values are all finite.
Solution solve(const Game& g, const SolveOptions& opt = {});
// solve() after pruning infinite locations; they get constant infinite values.
// Strategies cover the finite locations.
Solution solve_sptg(const Game& g, const SolveOptions& opt = {});

// Upper bound on the cutpoints of each value function.
BigInt cutpoint_budget(const Game& g);

}  // namespace ptg
