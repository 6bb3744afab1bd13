#pragma once

#include "ptg/cost_function.hpp"
#include "ptg/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptg {

enum class Owner { Min, Max, Final };

const char* to_string(Owner o);

struct Guard {
  Rational lo;
  Rational hi;
  bool lo_closed = true;
  bool hi_closed = true;

  static Guard closed(const Rational& lo, const Rational& hi) { return Guard{lo, hi, true, true}; }
  bool contains(const Rational& x) const;
  bool empty() const;
  friend bool operator==(const Guard&, const Guard&) = default;
};

struct Location {
  std::string name;
  Owner owner = Owner::Min;
  std::int64_t rate = 0;
  bool urgent = false;
  Affine final_cost;  // only meaningful for final locations

  bool is_final() const { return owner == Owner::Final; }
  friend bool operator==(const Location&, const Location&) = default;
};

struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  Guard guard;
  bool reset = false;
  std::int64_t weight = 0;
  friend bool operator==(const Transition&, const Transition&) = default;
};

// One-clock priced timed game. Transition order is significant: ties between
// optimal moves are broken towards the lowest transition index.
class Game {
 public:
  Game() = default;
  Game(Rational clock_bound, std::vector<Location> locations, std::vector<Transition> transitions);

  const Rational& clock_bound() const { return bound_; }
  const std::vector<Location>& locations() const { return locs_; }
  const std::vector<Transition>& transitions() const { return trans_; }
  const Location& location(std::size_t i) const { return locs_.at(i); }
  const Transition& transition(std::size_t i) const { return trans_.at(i); }
  std::size_t size() const { return locs_.size(); }
  const std::vector<std::size_t>& outgoing(std::size_t loc) const { return out_.at(loc); }
  std::optional<std::size_t> find(const std::string& name) const;
  std::size_t index_of(const std::string& name) const;  // throws ValidationError
  std::vector<std::size_t> finals() const;

  // Throws ValidationError on the first violated structural rule.
  void validate() const;

  // Largest absolute discrete weight, rate, and final cost at the domain ends.
  std::int64_t max_weight() const;
  std::int64_t max_rate() const;
  Rational max_final() const;

  friend bool operator==(const Game& a, const Game& b) {
    return a.bound_ == b.bound_ && a.locs_ == b.locs_ && a.trans_ == b.trans_;
  }

 private:
  void index();

  Rational bound_ = 1;
  std::vector<Location> locs_;
  std::vector<Transition> trans_;
  std::vector<std::vector<std::size_t>> out_;
};

// True iff every guard is exactly the closed [0, r] and no transition resets.
bool check_sptg(const Game& g, const Rational& r);

std::string serialize_game(const Game& g);  // canonical JSON, sorted keys
Game parse_game(const std::string& text);    // throws SyntaxError / ValidationError
Game load_game(const std::string& path);

}  // namespace ptg
