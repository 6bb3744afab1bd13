#pragma once

#include "ptg/game.hpp"

#include <random>
#include <string>

namespace ptg::testing {

// SPTG with clock bound 1, at most 6 locations (one or two finals), integer
// weights and rates in [-4, 4]. Some locations are urgent.
Game random_sptg(std::mt19937_64& rng);

// Game with clock bound 1 or 2, integral guards with mixed strict and point
// ends, and resets that only lead to a lower layer, so every region cycle is
// reset-free. Always passes validation.
Game random_reset_acyclic(std::mt19937_64& rng);

// One-line summary of a game for failure messages.
std::string describe(const Game& g);

// Uniform integer in [lo, hi], drawn as `rng() % n`.
std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi);

}  // namespace ptg::testing
