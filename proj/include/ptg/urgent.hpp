#pragma once

#include "ptg/cost_function.hpp"
#include "ptg/game.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace ptg {

struct InstantResult {
  std::vector<ExtValue> values;
  // Min: the transition through which the value was last decreased (optimal and
  // cycle-free). Max: lowest-index argmax at the fixpoint. Empty for finals and
  // for locations whose value stayed +inf.
  std::vector<std::optional<std::size_t>> choice;
  std::vector<std::size_t> settle_round;  // last round that changed the location
  std::size_t rounds = 0;                 // operator applications, including the stable one
};

using RoundObserver = std::function<void(std::size_t round, const std::vector<ExtValue>&)>;

// Cap on the number of value-iteration rounds for an all-urgent game.
BigInt iteration_bound(const Game& g);
// Iterates below this value are replaced by -inf.
Rational divergence_cutoff(const Game& g);

// Optimal values of the all-urgent game at valuation nu (min-cost reachability
// with final costs frozen at nu). Requires every non-final location urgent,
// every guard [0, r] and nu in [0, r]; throws PreconditionError otherwise.
InstantResult solve_instant_detailed(const Game& g, const Rational& nu, const RoundObserver& observer = {});
std::vector<ExtValue> solve_instant(const Game& g, const Rational& nu);

Game make_all_urgent(const Game& g);

// k + phi_l for every final l and integer k in [-(|L|-1)P_T, |L|P_T], deduplicated.
std::vector<Affine> line_family(const Game& g);

// Candidate cutpoints of the value functions of an all-urgent r-SPTG: all
// pairwise crossings of the line family within [0, r], plus 0 and r. Sorted.
std::vector<Rational> possible_cutpoints(const Game& g, const Rational& r);  // OpenMP
std::vector<Rational> possible_cutpoints_serial(const Game& g, const Rational& r);
// Literal construction through line_family and pairwise_intersections; quadratic in the family size.
std::vector<Rational> possible_cutpoints_reference(const Game& g, const Rational& r);

// Value functions of an all-urgent r-SPTG on [0, r], by interpolating solve_instant
// over the possible cutpoints.
std::vector<CostFunction> solve_all_urgent(const Game& g, const Rational& r);  // OpenMP
std::vector<CostFunction> solve_all_urgent_serial(const Game& g, const Rational& r);

struct UntimedStrategies {
  std::vector<std::optional<std::size_t>> max;
  std::vector<std::optional<std::size_t>> nc;         // Min, optimal without cycles
  std::vector<std::optional<std::size_t>> attractor;  // Min, reaches a final in few steps
};

// Shortest-path attractor towards the finals; empty entries outside the attractor.
std::vector<std::optional<std::size_t>> attractor_strategy(const Game& g);
// Throws NotFinite when some value at nu is infinite.
UntimedStrategies extract_untimed_strategies(const Game& g, const Rational& nu);

}  // namespace ptg
