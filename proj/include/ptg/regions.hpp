#pragma once

#include "ptg/game.hpp"
#include "ptg/solution.hpp"

#include <optional>
#include <vector>

namespace ptg {

// Either a point {lo} or an open interval (lo, hi) between consecutive endpoints.
struct Region {
  Rational lo;
  Rational hi;
  bool is_point() const { return lo == hi; }
  bool contains(const Rational& x) const { return is_point() ? x == lo : (lo < x && x < hi); }
  friend bool operator==(const Region&, const Region&) = default;
};

// Regions induced by the guard endpoints, 0 and the clock bound, in increasing order.
std::vector<Region> regions_of(const Game& g);

// Product of the game with its regions. Copied transitions carry the closure of
// their guard within the region; resets lead to the target's {0} copy. Non-urgent
// locations also get weight-0 moves from an interval to its upper endpoint and
// from a point to the interval right of it.
struct RegionGame {
  Game game;
  std::vector<Region> regions;
  std::vector<std::size_t> origin;                          // region location -> game location
  std::vector<std::size_t> region;                          // region location -> region index
  std::vector<std::optional<std::size_t>> origin_transition;  // empty for boundary moves

  std::size_t base_locations = 0;

  std::size_t index(std::size_t loc, std::size_t region_idx) const { return region_idx * base_locations + loc; }
};

RegionGame build_region_game(const Game& g);

struct ResetDag {
  std::vector<std::size_t> component;  // per region location
  std::size_t components = 0;          // numbered so that edges never go to a higher id
  std::vector<std::size_t> reset_targets;  // region locations, sinks first
};

// Throws ResetCycle, with a witness projected onto game locations, when a reset
// transition lies on a cycle of the region game.
ResetDag check_reset_acyclic(const RegionGame& rg);

// Values of a game whose region game has no reset on a cycle. No strategies.
Solution solve_reset_acyclic(const Game& g);

// The value function of `f` over the closure of region r.
CostFunction region_piece(const ValueFunction& f, const Region& r);

}  // namespace ptg
