#pragma once

#include "ptg/cost_function.hpp"
#include "ptg/game.hpp"

#include <cstddef>
#include <optional>
#include <random>
#include <vector>

namespace ptg {

struct Move {
  enum class Kind { Now, WaitUntil };
  Kind kind = Kind::Now;
  std::size_t transition = 0;
  Rational target;  // clock value to wait for, WaitUntil only

  static Move now(std::size_t t) { return Move{Kind::Now, t, 0}; }
  static Move wait_until(const Rational& x, std::size_t t) { return Move{Kind::WaitUntil, t, x}; }
  friend bool operator==(const Move&, const Move&) = default;
};

// A move on the interval [lo, hi); the last interval of a location also holds hi.
struct FpPiece {
  Rational lo;
  Rational hi;
  Move move;
  friend bool operator==(const FpPiece&, const FpPiece&) = default;
};

// Finite positional strategy: per location, a partition of the clock domain into
// finitely many intervals, each with one move.
class FpStrategy {
 public:
  FpStrategy() = default;
  explicit FpStrategy(std::size_t locations) : table_(locations) {}

  // Pieces must be contiguous and increasing; only the last may be a single
  // point. Equal neighbours are merged.
  void set(std::size_t loc, std::vector<FpPiece> pieces);
  const std::vector<FpPiece>& pieces(std::size_t loc) const { return table_.at(loc); }
  bool defined(std::size_t loc) const { return !table_.at(loc).empty(); }
  std::size_t locations() const { return table_.size(); }
  // nullptr when the strategy has no move there.
  const Move* move_at(std::size_t loc, const Rational& nu) const;
  // Interval ends over all locations, sorted and unique.
  std::vector<Rational> points() const;

  friend bool operator==(const FpStrategy&, const FpStrategy&) = default;

 private:
  std::vector<std::vector<FpPiece>> table_;
};

// Min plays `nc` until the accumulated cost drops to value(start) - budget, then
// switches for good to `attractor`.
struct SwitchingStrategy {
  FpStrategy nc;
  FpStrategy attractor;
  Rational budget;
  friend bool operator==(const SwitchingStrategy&, const SwitchingStrategy&) = default;
};

struct Config {
  std::size_t loc = 0;
  Rational nu;
};

struct Decision {
  Rational delay;
  std::size_t transition = 0;
};

Decision realize(const Move& m, const Rational& nu);

class Controller {
 public:
  virtual ~Controller() = default;
  virtual void begin(const Config&) {}
  virtual Decision choose(const Config& at, const Rational& accumulated) = 0;
};

class FpController : public Controller {
 public:
  explicit FpController(const FpStrategy& s) : s_(s) {}
  Decision choose(const Config& at, const Rational& accumulated) override;

 private:
  const FpStrategy& s_;
};

class SwitchingController : public Controller {
 public:
  SwitchingController(const SwitchingStrategy& s, const std::vector<ValueFunction>& values)
      : s_(s), values_(values) {}
  void begin(const Config& start) override;
  Decision choose(const Config& at, const Rational& accumulated) override;
  bool switched() const { return switched_; }

 private:
  const SwitchingStrategy& s_;
  const std::vector<ValueFunction>& values_;
  Rational threshold_;
  bool switched_ = false;
};

struct PlayStep {
  Config at;
  Decision decision;
  Rational cost;  // delay cost plus transition weight
};

struct PlayResult {
  std::vector<PlayStep> steps;
  Config end;
  bool reached = false;
  std::optional<Rational> cost;  // empty when the play did not reach a final within the step budget
};

// Plays the two controllers against each other. Throws InvalidMove on a move
// that breaks a guard, urgency, or the clock bound.
PlayResult play_out(const Game& g, Controller& min, Controller& max, const Config& start, std::size_t max_steps);

// Every cycle of moves consistent with `min` within one interval between
// consecutive strategy points has discrete weight at most -1.
bool validate_nc(const Game& g, const FpStrategy& min);

// Supremum over Max behaviours of the cost of plays from `start` that follow
// `min` and reach a final. Max may move at once or wait to any of the candidate
// clock values (strategy points, `extra_points`, 0, the clock bound, start).
// Empty when the longest-path relaxation does not settle within `budget` rounds.
std::optional<ExtValue> fake_value_upper_bound(const Game& g, const FpStrategy& min, const Config& start,
                                               std::size_t budget,
                                               const std::vector<Rational>& extra_points = {});

// Random FP strategy for the locations of `owner`: interval ends drawn from
// `points`, each interval playing now or waiting to its right end, with a
// transition enabled at that time. Integer draws are `rng() % n` so runs
// reproduce across standard libraries.
FpStrategy random_fp_strategy(const Game& g, Owner owner, const std::vector<Rational>& points,
                              std::mt19937_64& rng);

}  // namespace ptg
