#include "ptg/regions.hpp"

#include "ptg/errors.hpp"
#include "ptg/solver.hpp"
#include "ptg/urgent.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace ptg {

std::vector<Region> regions_of(const Game& g) {
  std::set<Rational> ends{Rational(0), g.clock_bound()};
  for (const auto& t : g.transitions()) ends.insert({t.guard.lo, t.guard.hi});
  std::vector<Rational> pts(ends.begin(), ends.end());
  std::vector<Region> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.push_back(Region{pts[i], pts[i]});
    if (i + 1 < pts.size()) out.push_back(Region{pts[i], pts[i + 1]});
  }
  return out;
}

namespace {

std::string region_name(const Region& r) {
  if (r.is_point()) return "{" + r.lo.str() + "}";
  return "(" + r.lo.str() + "," + r.hi.str() + ")";
}

// Closure of guard ∩ region, if non-empty. Guard ends are region ends.
std::optional<Guard> clip(const Guard& g, const Region& r) {
  if (r.is_point()) {
    if (!g.contains(r.lo)) return std::nullopt;
    return Guard::closed(r.lo, r.lo);
  }
  if (!(g.lo < r.hi && r.lo < g.hi)) return std::nullopt;
  return Guard::closed(max(g.lo, r.lo), min(g.hi, r.hi));
}

}  // namespace

RegionGame build_region_game(const Game& g) {
  RegionGame rg;
  rg.regions = regions_of(g);
  rg.base_locations = g.size();
  std::vector<Location> locs;
  for (std::size_t i = 0; i < rg.regions.size(); ++i)
    for (std::size_t l = 0; l < g.size(); ++l) {
      Location c = g.location(l);
      c.name += "@" + region_name(rg.regions[i]);
      locs.push_back(std::move(c));
      rg.origin.push_back(l);
      rg.region.push_back(i);
    }
  std::size_t zero_region = 0;  // regions start with the point {0}
  std::vector<Transition> trans;
  for (std::size_t i = 0; i < rg.regions.size(); ++i) {
    const Region& reg = rg.regions[i];
    for (std::size_t l = 0; l < g.size(); ++l) {
      for (auto ti : g.outgoing(l)) {
        const Transition& t = g.transition(ti);
        auto guard = clip(t.guard, reg);
        if (!guard) continue;
        std::size_t to = rg.index(t.to, t.reset ? zero_region : i);
        trans.push_back(Transition{rg.index(l, i), to, *guard, t.reset, t.weight});
        rg.origin_transition.push_back(ti);
      }
      const Location& loc = g.location(l);
      if (loc.is_final() || loc.urgent || i + 1 >= rg.regions.size()) continue;
      const Rational& at = reg.hi;
      trans.push_back(Transition{rg.index(l, i), rg.index(l, i + 1), Guard::closed(at, at), false, 0});
      rg.origin_transition.push_back(std::nullopt);
    }
  }
  rg.game = Game(g.clock_bound(), std::move(locs), std::move(trans));
  return rg;
}

ResetDag check_reset_acyclic(const RegionGame& rg) {
  const Game& g = rg.game;
  const std::size_t n = g.size();
  ResetDag dag;
  dag.component.assign(n, n);

  // Tarjan; components complete sinks first.
  std::vector<std::size_t> idx(n, n), low(n, 0), stack;
  std::vector<bool> on(n, false);
  std::size_t counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    idx[v] = low[v] = counter++;
    stack.push_back(v);
    on[v] = true;
    for (auto t : g.outgoing(v)) {
      std::size_t w = g.transition(t).to;
      if (idx[w] == n) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on[w]) {
        low[v] = std::min(low[v], idx[w]);
      }
    }
    if (low[v] == idx[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on[w] = false;
        dag.component[w] = dag.components;
      } while (w != v);
      ++dag.components;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (idx[v] == n) visit(v);

  std::set<std::size_t> targets;
  for (std::size_t t = 0; t < g.transitions().size(); ++t) {
    const Transition& tr = g.transition(t);
    if (!tr.reset) continue;
    if (dag.component[tr.from] == dag.component[tr.to]) {
      // shortest path from the reset target back to its source
      std::vector<std::size_t> prev(n, n);
      std::deque<std::size_t> q{tr.to};
      prev[tr.to] = tr.to;
      while (!q.empty() && prev[tr.from] == n) {
        std::size_t v = q.front();
        q.pop_front();
        for (auto e : g.outgoing(v)) {
          std::size_t w = g.transition(e).to;
          if (prev[w] != n || dag.component[w] != dag.component[tr.to]) continue;
          prev[w] = v;
          q.push_back(w);
        }
      }
      std::vector<std::size_t> path{tr.from};
      while (path.back() != tr.to) path.push_back(prev[path.back()]);
      std::reverse(path.begin(), path.end());
      path.push_back(tr.to);
      std::vector<std::string> witness;
      for (auto v : path) {
        const std::string& name = rg.game.location(v).name.substr(0, rg.game.location(v).name.rfind('@'));
        if (witness.empty() || witness.back() != name) witness.push_back(name);
      }
      throw ResetCycle(witness);
    }
    targets.insert(tr.to);
  }
  dag.reset_targets.assign(targets.begin(), targets.end());
  std::stable_sort(dag.reset_targets.begin(), dag.reset_targets.end(),
                   [&](auto a, auto b) { return dag.component[a] < dag.component[b]; });
  return dag;
}

CostFunction region_piece(const ValueFunction& f, const Region& r) {
  if (r.is_point()) return CostFunction::constant(r.lo, r.lo, f.evaluate(r.lo));
  for (const auto& s : f.segments())
    if (!s.is_point() && s.lo() <= r.lo && r.hi <= s.hi()) return s.restrict(r.lo, r.hi);
  throw DomainError("no segment covers " + region_name(r));
}

namespace {

// Game over one region layer. External targets become finals with the
// target's value, or sink gadgets when that value is infinite.
class LayerGame {
 public:
  LayerGame(Rational bound) : bound_(std::move(bound)) {}

  std::size_t add(Location l) {
    locs_.push_back(std::move(l));
    return locs_.size() - 1;
  }

  std::size_t final_for(const Affine& phi) {
    Location l;
    l.name = "exit" + std::to_string(locs_.size());
    l.owner = Owner::Final;
    l.final_cost = phi;
    return add(std::move(l));
  }

  // Target worth v from anywhere in the layer.
  std::size_t constant(const ExtValue& v) {
    if (v.is_finite()) return final_for(Affine{0, v.value()});
    if (v.is_plus_inf()) {
      if (!plus_) {
        plus_ = add(sink("sink+"));
        link(*plus_, *plus_, 0);
      }
      return *plus_;
    }
    if (!minus_) {
      minus_ = add(sink("sink-"));
      link(*minus_, *minus_, -1);
      link(*minus_, final_for(Affine{0, 0}), 0);
    }
    return *minus_;
  }

  void link(std::size_t from, std::size_t to, std::int64_t w) {
    trans_.push_back(Transition{from, to, Guard::closed(0, bound_), false, w});
  }

  Game build() const { return Game(bound_, locs_, trans_); }

 private:
  static Location sink(const char* name) {
    Location l;
    l.name = name;
    l.owner = Owner::Min;
    l.urgent = true;
    return l;
  }

  Rational bound_;
  std::vector<Location> locs_;
  std::vector<Transition> trans_;
  std::optional<std::size_t> plus_, minus_;
};

class LayeredSolver {
 public:
  LayeredSolver(const Game& g, const RegionGame& rg, const std::map<std::size_t, ExtValue>& reset_values)
      : g_(g), rg_(rg), reset_values_(reset_values) {}

  // Values of every region location reachable from `roots` without resets.
  std::map<std::size_t, CostFunction> run(const std::vector<std::size_t>& roots) {
    std::set<std::size_t> scope;
    std::vector<std::size_t> todo(roots);
    while (!todo.empty()) {
      std::size_t v = todo.back();
      todo.pop_back();
      if (!scope.insert(v).second) continue;
      for (auto t : rg_.game.outgoing(v))
        if (!rg_.game.transition(t).reset) todo.push_back(rg_.game.transition(t).to);
    }
    std::map<std::size_t, std::vector<std::size_t>> by_region;
    for (auto v : scope) by_region[rg_.region[v]].push_back(v);
    for (auto it = by_region.rbegin(); it != by_region.rend(); ++it) {
      const Region& reg = rg_.regions[it->first];
      if (reg.is_point())
        solve_point(reg, it->second);
      else
        solve_interval(reg, it->second);
    }
    return std::move(vals_);
  }

 private:
  const Location& orig(std::size_t v) const { return g_.location(rg_.origin[v]); }

  ExtValue value_of(std::size_t v, const Rational& x) const { return vals_.at(v).evaluate(x); }

  ExtValue reset_value(std::size_t target) const {
    auto it = reset_values_.find(target);
    if (it == reset_values_.end()) throw Error("reset target solved out of order");
    return it->second;
  }

  void solve_point(const Region& reg, const std::vector<std::size_t>& members) {
    const Rational& m = reg.lo;
    LayerGame lg(0);
    std::map<std::size_t, std::size_t> local;
    for (auto v : members) {
      Location l = rg_.game.location(v);
      if (l.is_final()) {
        l.final_cost = Affine{0, l.final_cost.at(m)};
      } else {
        l.urgent = true;
      }
      local[v] = lg.add(std::move(l));
    }
    for (auto v : members) {
      for (auto t : rg_.game.outgoing(v)) {
        const Transition& tr = rg_.game.transition(t);
        std::size_t to;
        if (tr.reset)
          to = lg.constant(reset_value(tr.to));
        else if (rg_.region[tr.to] == rg_.region[v])
          to = local.at(tr.to);
        else
          to = lg.constant(value_of(tr.to, m));  // boundary move into the interval on the right
        lg.link(local[v], to, tr.weight);
      }
    }
    auto res = solve_instant(lg.build(), 0);
    for (auto v : members) vals_.emplace(v, CostFunction::constant(m, m, res[local[v]]));
  }

  void solve_interval(const Region& reg, const std::vector<std::size_t>& members) {
    const Rational& a = reg.lo;
    const Rational len = reg.hi - reg.lo;
    if (!len.is_integer()) throw Error("region length must be integral");
    const std::int64_t scale = std::stoll(len.num().get_str());
    LayerGame lg(1);
    std::map<std::size_t, std::size_t> local;
    for (auto v : members) {
      Location l = rg_.game.location(v);
      l.rate *= scale;
      if (l.is_final()) {
        const Affine& phi = rg_.game.location(v).final_cost;
        l.final_cost = Affine{phi.slope * len, phi.slope * a + phi.intercept};
      }
      local[v] = lg.add(std::move(l));
    }
    for (auto v : members) {
      for (auto t : rg_.game.outgoing(v)) {
        const Transition& tr = rg_.game.transition(t);
        std::size_t to;
        if (tr.reset) {
          to = lg.constant(reset_value(tr.to));
        } else if (rg_.region[tr.to] == rg_.region[v]) {
          to = local.at(tr.to);
        } else {
          // waiting until the right end, then moving into its point region
          ExtValue c = value_of(tr.to, reg.hi);
          std::int64_t rate = orig(v).rate * scale;
          to = c.is_finite() ? lg.final_for(Affine{Rational(-rate), Rational(rate) + c.value()}) : lg.constant(c);
        }
        lg.link(local[v], to, tr.weight);
      }
    }
    Solution s = solve_sptg(lg.build(), SolveOptions{false, true, true});
    for (auto v : members) {
      const CostFunction& f = s.values[local[v]].segments().front();
      if (s.values[local[v]].segments().size() != 1) throw Error("layer value is not continuous");
      vals_.emplace(v, rescale(f, a, len));
    }
  }

  static CostFunction rescale(const CostFunction& f, const Rational& a, const Rational& len) {
    std::vector<Rational> bp;
    for (const auto& x : f.breakpoints()) bp.push_back(a + len * x);
    std::vector<Piece> ps;
    for (const auto& p : f.pieces()) {
      if (const auto* af = std::get_if<Affine>(&p)) {
        Rational s = af->slope / len;
        ps.emplace_back(Affine{s, af->intercept - s * a});
      } else {
        ps.push_back(p);
      }
    }
    return CostFunction(std::move(bp), std::move(ps));
  }

  const Game& g_;
  const RegionGame& rg_;
  const std::map<std::size_t, ExtValue>& reset_values_;
  std::map<std::size_t, CostFunction> vals_;
};

}  // namespace

Solution solve_reset_acyclic(const Game& g) {
  RegionGame rg = build_region_game(g);
  ResetDag dag = check_reset_acyclic(rg);
  std::map<std::size_t, ExtValue> reset_values;
  for (auto t : dag.reset_targets) {
    LayeredSolver ls(g, rg, reset_values);
    auto vals = ls.run({t});
    reset_values.emplace(t, vals.at(t).evaluate(0));
  }
  std::vector<std::size_t> all(rg.game.size());
  for (std::size_t v = 0; v < all.size(); ++v) all[v] = v;
  LayeredSolver ls(g, rg, reset_values);
  auto vals = ls.run(all);

  Solution sol;
  sol.mode = SolveMode::ResetAcyclic;
  sol.clock_bound = g.clock_bound();
  for (std::size_t l = 0; l < g.size(); ++l) {
    std::vector<CostFunction> segs;
    for (std::size_t i = 0; i < rg.regions.size(); ++i) segs.push_back(vals.at(rg.index(l, i)));
    sol.values.emplace_back(std::move(segs));
  }
  ResetDagSummary sum;
  sum.region_locations = rg.game.size();
  sum.components = dag.components;
  for (auto t : dag.reset_targets) sum.reset_targets.push_back(rg.game.location(t).name);
  sol.reset_dag = std::move(sum);
  return sol;
}

}  // namespace ptg
