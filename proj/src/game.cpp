#include "ptg/game.hpp"

#include "ptg/errors.hpp"

#include <algorithm>
#include <set>

namespace ptg {

const char* to_string(ValidationKind k) {
  switch (k) {
    case ValidationKind::UnknownLocation: return "UnknownLocation";
    case ValidationKind::FinalHasOutgoing: return "FinalHasOutgoing";
    case ValidationKind::GuardOutOfBounds: return "GuardOutOfBounds";
    case ValidationKind::NonAffineFinalCost: return "NonAffineFinalCost";
    case ValidationKind::Deadlock: return "Deadlock";
    case ValidationKind::UrgentFinal: return "UrgentFinal";
    case ValidationKind::DuplicateName: return "DuplicateName";
    case ValidationKind::Malformed: return "Malformed";
  }
  return "?";
}

const char* to_string(Owner o) {
  switch (o) {
    case Owner::Min: return "min";
    case Owner::Max: return "max";
    case Owner::Final: return "final";
  }
  return "?";
}

namespace {

std::string witness_str(const std::vector<std::string>& w) {
  std::string s;
  for (const auto& n : w) s += (s.empty() ? "" : " -> ") + n;
  return s;
}

}  // namespace

ResetCycle::ResetCycle(std::vector<std::string> witness)
    : Error("reset cycle: " + witness_str(witness)), witness_(std::move(witness)) {}

bool Guard::contains(const Rational& x) const {
  bool above = lo_closed ? lo <= x : lo < x;
  bool below = hi_closed ? x <= hi : x < hi;
  return above && below;
}

bool Guard::empty() const { return hi < lo || (lo == hi && !(lo_closed && hi_closed)); }

Game::Game(Rational clock_bound, std::vector<Location> locations, std::vector<Transition> transitions)
    : bound_(std::move(clock_bound)), locs_(std::move(locations)), trans_(std::move(transitions)) {
  index();
}

void Game::index() {
  out_.assign(locs_.size(), {});
  for (std::size_t t = 0; t < trans_.size(); ++t) {
    if (trans_[t].from >= locs_.size() || trans_[t].to >= locs_.size())
      throw ValidationError(ValidationKind::UnknownLocation, "transition " + std::to_string(t));
    out_[trans_[t].from].push_back(t);
  }
}

std::optional<std::size_t> Game::find(const std::string& name) const {
  for (std::size_t i = 0; i < locs_.size(); ++i)
    if (locs_[i].name == name) return i;
  return std::nullopt;
}

std::size_t Game::index_of(const std::string& name) const {
  auto i = find(name);
  if (!i) throw ValidationError(ValidationKind::UnknownLocation, "'" + name + "'");
  return *i;
}

std::vector<std::size_t> Game::finals() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < locs_.size(); ++i)
    if (locs_[i].is_final()) out.push_back(i);
  return out;
}

std::int64_t Game::max_weight() const {
  std::int64_t m = 0;
  for (const auto& t : trans_) m = std::max(m, t.weight < 0 ? -t.weight : t.weight);
  return m;
}

std::int64_t Game::max_rate() const {
  std::int64_t m = 0;
  for (const auto& l : locs_) m = std::max(m, l.rate < 0 ? -l.rate : l.rate);
  return m;
}

Rational Game::max_final() const {
  Rational m = 0;
  for (const auto& l : locs_) {
    if (!l.is_final()) continue;
    m = max(m, l.final_cost.at(0).abs());
    m = max(m, l.final_cost.at(bound_).abs());
  }
  return m;
}

void Game::validate() const {
  if (bound_ < 0 || !bound_.is_integer())
    throw ValidationError(ValidationKind::Malformed, "clock bound must be a natural number");
  std::set<std::string> names;
  for (const auto& l : locs_) {
    if (!names.insert(l.name).second) throw ValidationError(ValidationKind::DuplicateName, "'" + l.name + "'");
    if (l.is_final() && l.urgent) throw ValidationError(ValidationKind::UrgentFinal, "'" + l.name + "'");
  }
  for (const auto& t : trans_) {
    const auto& from = locs_[t.from];
    if (from.is_final()) throw ValidationError(ValidationKind::FinalHasOutgoing, "'" + from.name + "'");
    const Guard& g = t.guard;
    std::string where = from.name + " -> " + locs_[t.to].name;
    if (g.lo < 0 || g.hi > bound_ || g.empty())
      throw ValidationError(ValidationKind::GuardOutOfBounds, where);
    if (!g.lo.is_integer() || !g.hi.is_integer())
      throw ValidationError(ValidationKind::GuardOutOfBounds, where + " has non-integral endpoints");
  }

  // Every configuration of a non-final location must have a transition enabled
  // now or, where waiting is allowed, later within the clock bound. It suffices
  // to check one representative per region.
  std::set<Rational> ends{Rational(0), bound_};
  for (const auto& t : trans_) ends.insert({t.guard.lo, t.guard.hi});
  std::vector<Rational> pts(ends.begin(), ends.end());
  std::vector<Rational> reps;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    reps.push_back(pts[i]);
    if (i + 1 < pts.size()) reps.push_back((pts[i] + pts[i + 1]) / 2);
  }
  for (std::size_t l = 0; l < locs_.size(); ++l) {
    if (locs_[l].is_final()) continue;
    for (const auto& x : reps) {
      bool ok = false;
      for (auto t : out_[l]) {
        const Guard& g = trans_[t].guard;
        if (g.contains(x)) ok = true;
        // g.hi is a region endpoint, so some later valuation lies in g iff g reaches past x
        else if (!locs_[l].urgent && (x < g.hi || (x == g.hi && g.hi_closed))) ok = true;
        if (ok) break;
      }
      if (!ok)
        throw ValidationError(ValidationKind::Deadlock, "'" + locs_[l].name + "' has no move at x=" + x.str());
    }
  }
}

bool check_sptg(const Game& g, const Rational& r) {
  for (const auto& t : g.transitions())
    if (t.reset || !(t.guard == Guard::closed(0, r))) return false;
  return true;
}

}  // namespace ptg
