#pragma once

#include "ptg/cost_function.hpp"
#include "ptg/game.hpp"
#include "ptg/strategy.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ptg {

struct Rejection {
  Rational a;
  Rational b;
  std::vector<std::size_t> locations;  // non-urgent locations failing the slope test
};

// One pass of the outer sweep: values on [next_r, r] were settled with the
// non-urgent locations allowed to wait until r.
struct SweepWindow {
  Rational r;
  Rational next_r;
  std::size_t accepted = 0;  // candidate cutpoints accepted in this window
  std::optional<Rejection> rejection;
};

struct StrategyProfile {
  FpStrategy max;
  SwitchingStrategy min;
};

struct ResetDagSummary {
  std::size_t region_locations = 0;
  std::size_t components = 0;
  std::vector<std::string> reset_targets;  // in solving order
};

enum class SolveMode { Sptg, ResetAcyclic };

struct Solution {
  SolveMode mode = SolveMode::Sptg;
  Rational clock_bound;
  std::vector<ValueFunction> values;  // indexed like the game's locations
  std::optional<StrategyProfile> strategies;
  std::vector<SweepWindow> trace;
  std::optional<ResetDagSummary> reset_dag;
};

std::string serialize_solution(const Game& g, const Solution& s);  // canonical JSON, sorted keys
// Names are resolved against g. Throws SyntaxError / ValidationError.
Solution parse_solution(const Game& g, const std::string& text);

}  // namespace ptg
