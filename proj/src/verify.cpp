#include "ptg/verify.hpp"

#include "ptg/regions.hpp"

#include <algorithm>

namespace ptg {

std::vector<BellmanVerdict> bellman_check(const Game& g, const std::vector<ValueFunction>& values,
                                          const Rational& nu) {
  std::vector<BellmanVerdict> out;
  for (std::size_t l = 0; l < g.size(); ++l) {
    const Location& loc = g.location(l);
    if (loc.is_final() || nu < values[l].lo() || nu > values[l].hi()) continue;
    BellmanVerdict v;
    v.location = l;
    v.nu = nu;
    v.actual = values[l].evaluate(nu);
    const bool is_min = loc.owner == Owner::Min;
    v.expected = is_min ? ExtValue::plus_inf() : ExtValue::minus_inf();
    for (auto ti : g.outgoing(l)) {
      const Transition& t = g.transition(ti);
      const ValueFunction& target = values[t.to];
      std::vector<Rational> delays{0};
      if (!loc.urgent) {
        delays.push_back(t.guard.lo - nu);
        delays.push_back(t.guard.hi - nu);
        if (!t.reset)
          for (const auto& x : target.breakpoints()) delays.push_back(x - nu);
      }
      for (const auto& d : delays) {
        Rational when = nu + d;
        if (d < 0 || when > g.clock_bound() || !t.guard.contains(when)) continue;
        Rational at = t.reset ? Rational(0) : when;
        if (at < target.lo() || at > target.hi()) continue;
        ExtValue c = ExtValue(d * Rational(loc.rate) + Rational(t.weight)) + target.evaluate(at);
        if (!v.witness || (is_min ? c < v.expected : c > v.expected)) {
          v.expected = c;
          v.witness = ti;
          v.witness_delay = d;
        }
      }
    }
    v.ok = v.expected == v.actual;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<BellmanVerdict> bellman_check_regions(const Game& g, const std::vector<ValueFunction>& values,
                                                  const Rational& nu) {
  RegionGame rg = build_region_game(g);
  std::vector<ValueFunction> rv;
  rv.reserve(rg.game.size());
  for (std::size_t v = 0; v < rg.game.size(); ++v)
    rv.emplace_back(region_piece(values[rg.origin[v]], rg.regions[rg.region[v]]));
  auto verdicts = bellman_check(rg.game, rv, nu);
  for (auto& v : verdicts) v.location = rg.origin[v.location];
  return verdicts;
}

std::vector<std::string> check_rate_bounds(const Game& g, const std::vector<ValueFunction>& values) {
  std::vector<std::string> bad;
  for (std::size_t l = 0; l < g.size(); ++l) {
    const Location& loc = g.location(l);
    if (loc.is_final() || loc.urgent) continue;
    for (const auto& seg : values[l].segments())
      for (const auto& p : seg.pieces()) {
        const auto* a = std::get_if<Affine>(&p);
        if (!a || seg.is_point()) continue;
        bool ok = loc.owner == Owner::Min ? a->slope >= -loc.rate : a->slope <= -loc.rate;
        if (!ok) bad.push_back(loc.name + " has slope " + a->slope.str());
      }
  }
  return bad;
}

Rational lipschitz_constant(const Game& g) {
  Rational k = g.max_rate();
  for (const auto& l : g.locations())
    if (l.is_final()) k = max(k, l.final_cost.slope.abs());
  return k;
}

std::vector<std::string> check_lipschitz(const Game& g, const std::vector<ValueFunction>& values) {
  Rational k = lipschitz_constant(g);
  std::vector<std::string> bad;
  for (std::size_t l = 0; l < g.size(); ++l)
    for (const auto& seg : values[l].segments())
      for (const auto& p : seg.pieces()) {
        const auto* a = std::get_if<Affine>(&p);
        if (a && !seg.is_point() && a->slope.abs() > k)
          bad.push_back(g.location(l).name + " has slope " + a->slope.str() + " beyond " + k.str());
      }
  return bad;
}

std::vector<Rational> sample_points(const std::vector<ValueFunction>& values, const Rational& lo, const Rational& hi,
                                    std::size_t grid) {
  std::vector<Rational> pts{lo, hi};
  for (const auto& f : values)
    for (const auto& x : f.breakpoints()) pts.push_back(x);
  for (std::size_t i = 1; i < grid; ++i)
    pts.push_back(lo + (hi - lo) * Rational(static_cast<std::int64_t>(i), static_cast<std::int64_t>(grid)));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<Rational> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.push_back(pts[i]);
    if (i + 1 < pts.size()) out.push_back((pts[i] + pts[i + 1]) / 2);
  }
  return out;
}

}  // namespace ptg
