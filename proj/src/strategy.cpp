#include "ptg/strategy.hpp"

#include "ptg/errors.hpp"

#include <algorithm>
#include <map>

namespace ptg {

void FpStrategy::set(std::size_t loc, std::vector<FpPiece> pieces) {
  std::vector<FpPiece> merged;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    FpPiece& p = pieces[i];
    if (p.hi < p.lo) throw DomainError("strategy interval with hi < lo");
    if (p.lo == p.hi && i + 1 != pieces.size()) throw DomainError("a point interval may only end a strategy");
    if (!merged.empty()) {
      if (p.lo != merged.back().hi) throw DomainError("strategy intervals must be contiguous");
      const Move& prev = merged.back().move;
      bool same_at_point = p.lo == p.hi && p.move.kind == Move::Kind::Now && prev.kind == Move::Kind::WaitUntil &&
                           prev.target == p.lo && prev.transition == p.move.transition;
      if (p.move == prev || same_at_point) {
        merged.back().hi = p.hi;
        continue;
      }
    }
    merged.push_back(std::move(p));
  }
  table_.at(loc) = std::move(merged);
}

const Move* FpStrategy::move_at(std::size_t loc, const Rational& nu) const {
  const auto& ps = table_.at(loc);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    bool last = i + 1 == ps.size();
    if (ps[i].lo <= nu && (nu < ps[i].hi || (last && nu == ps[i].hi))) return &ps[i].move;
  }
  return nullptr;
}

std::vector<Rational> FpStrategy::points() const {
  std::vector<Rational> out;
  for (const auto& ps : table_)
    for (const auto& p : ps) {
      out.push_back(p.lo);
      out.push_back(p.hi);
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Decision realize(const Move& m, const Rational& nu) {
  if (m.kind == Move::Kind::Now) return Decision{0, m.transition};
  if (m.target < nu) throw InvalidMove("wait target " + m.target.str() + " is before " + nu.str());
  return Decision{m.target - nu, m.transition};
}

Decision FpController::choose(const Config& at, const Rational&) {
  const Move* m = s_.move_at(at.loc, at.nu);
  if (!m) throw InvalidMove("strategy has no move at location " + std::to_string(at.loc) + ", x=" + at.nu.str());
  return realize(*m, at.nu);
}

void SwitchingController::begin(const Config& start) {
  threshold_ = values_.at(start.loc).evaluate(start.nu).value() - s_.budget;
  switched_ = false;
}

Decision SwitchingController::choose(const Config& at, const Rational& accumulated) {
  if (!switched_ && accumulated <= threshold_) switched_ = true;
  const FpStrategy& s = switched_ ? s_.attractor : s_.nc;
  const Move* m = s.move_at(at.loc, at.nu);
  if (!m) throw InvalidMove("strategy has no move at location " + std::to_string(at.loc) + ", x=" + at.nu.str());
  return realize(*m, at.nu);
}

PlayResult play_out(const Game& g, Controller& min, Controller& max, const Config& start, std::size_t max_steps) {
  PlayResult res;
  Config cfg = start;
  Rational acc = 0;
  min.begin(start);
  max.begin(start);
  for (std::size_t step = 0;; ++step) {
    const Location& loc = g.location(cfg.loc);
    if (loc.is_final()) {
      acc += loc.final_cost.at(cfg.nu);
      res.reached = true;
      res.cost = acc;
      break;
    }
    if (step == max_steps) break;
    Controller& who = loc.owner == Owner::Min ? min : max;
    Decision d = who.choose(cfg, acc);
    std::string where = "at '" + loc.name + "', x=" + cfg.nu.str();
    if (d.delay < 0) throw InvalidMove("negative delay " + where);
    if (loc.urgent && d.delay != 0) throw InvalidMove("delay in urgent location " + where);
    Rational when = cfg.nu + d.delay;
    if (when > g.clock_bound()) throw InvalidMove("clock bound exceeded " + where);
    if (d.transition >= g.transitions().size() || g.transition(d.transition).from != cfg.loc)
      throw InvalidMove("transition not available " + where);
    const Transition& t = g.transition(d.transition);
    if (!t.guard.contains(when)) throw InvalidMove("guard violated " + where);
    Rational cost = d.delay * Rational(loc.rate) + Rational(t.weight);
    res.steps.push_back(PlayStep{cfg, d, cost});
    acc += cost;
    cfg = Config{t.to, t.reset ? Rational(0) : when};
  }
  res.end = cfg;
  return res;
}

namespace {

// Does g meet [lo, hi), or [lo, hi] when hi_closed?
bool guard_meets(const Guard& g, const Rational& lo, const Rational& hi, bool hi_closed) {
  Rational a = max(g.lo, lo), b = min(g.hi, hi);
  if (b < a) return false;
  if (a < b) return true;
  return g.contains(a) && (hi_closed || a < hi);
}

}  // namespace

bool validate_nc(const Game& g, const FpStrategy& min) {
  std::vector<Rational> pts = min.points();
  pts.push_back(0);
  pts.push_back(g.clock_bound());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = g.size();
  const std::int64_t scale = static_cast<std::int64_t>(n) + 1;

  // Intervals [p_i, p_i+1) plus the closed point at the bound. Min moves are
  // constant on each, so the left end represents the interval; a wait leaves it.
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Rational& lo = pts[i];
    const bool at_bound = i + 1 == pts.size();
    const Rational& hi = at_bound ? pts[i] : pts[i + 1];
    struct Edge {
      std::size_t from, to;
      std::int64_t w;
    };
    std::vector<Edge> edges;
    for (std::size_t l = 0; l < n; ++l) {
      const Location& loc = g.location(l);
      if (loc.is_final()) continue;
      if (loc.owner == Owner::Min) {
        const Move* m = min.move_at(l, lo);
        if (!m) continue;
        if (m->kind == Move::Kind::WaitUntil && m->target > lo) continue;
        const Transition& t = g.transition(m->transition);
        if (!t.reset) edges.push_back({l, t.to, t.weight});
      } else {
        for (auto ti : g.outgoing(l)) {
          const Transition& t = g.transition(ti);
          if (!t.reset && guard_meets(t.guard, lo, hi, at_bound)) edges.push_back({l, t.to, t.weight});
        }
      }
    }
    // A simple cycle has at most n edges, so with w' = -(n+1)w - 1 a cycle of
    // weight >= 0 becomes strictly negative and one of weight <= -1 stays positive.
    std::vector<std::int64_t> dist(n, 0);
    bool relaxed = true;
    for (std::size_t round = 0; round <= n && relaxed; ++round) {
      relaxed = false;
      for (const auto& e : edges) {
        std::int64_t w = -scale * e.w - 1;
        if (dist[e.from] + w < dist[e.to]) {
          dist[e.to] = dist[e.from] + w;
          relaxed = true;
        }
      }
      if (relaxed && round == n) return false;
    }
  }
  return true;
}

std::optional<ExtValue> fake_value_upper_bound(const Game& g, const FpStrategy& min, const Config& start,
                                               std::size_t budget, const std::vector<Rational>& extra_points) {
  std::vector<Rational> cand = min.points();
  cand.insert(cand.end(), extra_points.begin(), extra_points.end());
  cand.push_back(0);
  cand.push_back(g.clock_bound());
  cand.push_back(start.nu);
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  while (!cand.empty() && cand.back() > g.clock_bound()) cand.pop_back();
  const std::size_t k = cand.size();
  auto idx = [&](const Rational& x) -> std::optional<std::size_t> {
    auto it = std::lower_bound(cand.begin(), cand.end(), x);
    if (it == cand.end() || *it != x) return std::nullopt;
    return static_cast<std::size_t>(it - cand.begin());
  };
  auto node = [&](std::size_t loc, std::size_t c) { return loc * k + c; };

  struct Edge {
    std::size_t to;
    Rational cost;
  };
  const std::size_t n = g.size();
  std::vector<std::vector<Edge>> out(n * k);
  std::vector<ExtValue> val(n * k, ExtValue::minus_inf());
  for (std::size_t l = 0; l < n; ++l) {
    const Location& loc = g.location(l);
    for (std::size_t c = 0; c < k; ++c) {
      const Rational& nu = cand[c];
      if (loc.is_final()) {
        val[node(l, c)] = ExtValue(loc.final_cost.at(nu));
        continue;
      }
      if (loc.owner == Owner::Min) {
        const Move* m = min.move_at(l, nu);
        if (!m || (m->kind == Move::Kind::WaitUntil && m->target < nu)) continue;
        Decision d = realize(*m, nu);
        Rational when = nu + d.delay;
        const Transition& t = g.transition(d.transition);
        if (t.from != l || !t.guard.contains(when) || (loc.urgent && d.delay != 0)) continue;
        auto tc = idx(t.reset ? Rational(0) : when);
        if (!tc) continue;
        out[node(l, c)].push_back({node(t.to, *tc), d.delay * Rational(loc.rate) + Rational(t.weight)});
      } else {
        for (auto ti : g.outgoing(l)) {
          const Transition& t = g.transition(ti);
          for (std::size_t c2 = c; c2 < k; ++c2) {
            if (loc.urgent && c2 != c) break;
            if (!t.guard.contains(cand[c2])) continue;
            std::size_t tc = t.reset ? *idx(Rational(0)) : c2;
            out[node(l, c)].push_back(
                {node(t.to, tc), (cand[c2] - nu) * Rational(loc.rate) + Rational(t.weight)});
          }
        }
      }
    }
  }

  for (std::size_t round = 0;; ++round) {
    bool changed = false;
    for (std::size_t v = 0; v < out.size(); ++v) {
      for (const auto& e : out[v]) {
        if (val[e.to].is_minus_inf()) continue;
        ExtValue cand_v = ExtValue(e.cost) + val[e.to];
        if (cand_v > val[v]) {
          val[v] = cand_v;
          changed = true;
        }
      }
    }
    if (!changed) break;
    if (round + 1 >= budget) return std::nullopt;
  }
  return val[node(start.loc, *idx(start.nu))];
}

}  // namespace ptg

namespace ptg {

FpStrategy random_fp_strategy(const Game& g, Owner owner, const std::vector<Rational>& points,
                              std::mt19937_64& rng) {
  const Rational& bound = g.clock_bound();
  std::vector<Rational> inner;
  for (const auto& p : points)
    if (0 < p && p < bound) inner.push_back(p);
  std::sort(inner.begin(), inner.end());
  inner.erase(std::unique(inner.begin(), inner.end()), inner.end());

  FpStrategy s(g.size());
  for (std::size_t l = 0; l < g.size(); ++l) {
    const Location& loc = g.location(l);
    if (loc.owner != owner || g.outgoing(l).empty()) continue;
    std::vector<Rational> ends{0};
    for (const auto& p : inner)
      if (rng() % 2 == 0) ends.push_back(p);
    if (bound > 0) ends.push_back(bound);
    std::vector<FpPiece> pieces;
    for (std::size_t i = 0; i + 1 < ends.size() || (ends.size() == 1 && i == 0); ++i) {
      Rational lo = ends[i], hi = ends.size() == 1 ? ends[0] : ends[i + 1];
      Rational mid = (lo + hi) / 2;
      bool last = i + 2 >= ends.size();
      std::vector<Move> options;
      for (auto t : g.outgoing(l)) {
        const Guard& gd = g.transition(t).guard;
        bool all = gd.contains(lo) && gd.contains(mid) && (!last || gd.contains(hi));
        if (all) options.push_back(Move::now(t));
        if (!loc.urgent && gd.contains(hi) && lo < hi) options.push_back(Move::wait_until(hi, t));
      }
      if (options.empty()) options.push_back(Move::now(g.outgoing(l).front()));
      pieces.push_back(FpPiece{lo, hi, options[rng() % options.size()]});
    }
    s.set(l, std::move(pieces));
  }
  return s;
}

}  // namespace ptg
