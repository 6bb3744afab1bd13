#include "properties.hpp"

#include "oracle.hpp"

#include "ptg/errors.hpp"
#include "ptg/regions.hpp"
#include "ptg/solver.hpp"
#include "ptg/strategy.hpp"
#include "ptg/urgent.hpp"
#include "ptg/verify.hpp"

#include <algorithm>

namespace ptg::testing {

const std::array<const char*, 7> kSptgPropertyNames = {
    "(a) one-step optimality at breakpoints and midpoints",
    "(b) Lipschitz bound",
    "(c) rate bounds on waiting locations",
    "(d) value iteration monotone, within its bound, equal to enumeration",
    "(e) breakpoint values on the window's line family",
    "(f) optimal play costs exactly the value",
    "(g) breakpoint count within the cutpoint budget",
};

namespace {

void fail(SptgProperties& p, std::size_t i, const std::string& msg) {
  p.ok[i] = false;
  if (p.failures.size() < 20) p.failures.push_back(std::string(kSptgPropertyNames[i]) + ": " + msg);
}

void check_iteration(SptgProperties& p, const Game& urgent, const Rational& nu) {
  std::vector<ExtValue> prev;
  bool mono = true;
  auto obs = [&](std::size_t, const std::vector<ExtValue>& x) {
    if (!prev.empty())
      for (std::size_t l = 0; l < x.size(); ++l)
        if (prev[l] < x[l]) mono = false;
    prev = x;
  };
  InstantResult res = solve_instant_detailed(urgent, nu, obs);
  if (!mono) fail(p, 3, "iterates increased at x=" + nu.str());
  if (BigInt(static_cast<unsigned long>(res.rounds - 1)) > iteration_bound(urgent))
    fail(p, 3, "too many rounds at x=" + nu.str());
  if (res.values != urgent_values_by_enumeration(urgent, nu)) fail(p, 3, "differs from enumeration at x=" + nu.str());
}

std::size_t interior_cutpoints(const ValueFunction& f) {
  auto b = f.breakpoints();
  return b.size() > 2 ? b.size() - 2 : 0;
}

}  // namespace

SptgProperties check_sptg_properties(const Game& g, std::mt19937_64& rng) {
  SptgProperties p;
  PruneResult pr;
  try {
    pr = prune_infinite(g);
  } catch (const EmptyGame&) {
    return p;
  }
  const Game& pg = pr.game;
  Solution sol = solve(pg);
  p.solved = true;

  auto pts = sample_points(sol.values, 0, 1, 4);
  for (const auto& x : pts)
    for (const auto& v : bellman_check(pg, sol.values, x))
      if (!v.ok)
        fail(p, 0, pg.location(v.location).name + " at x=" + x.str() + ": " + v.actual.str() + " vs " +
                       v.expected.str());

  for (const auto& m : check_lipschitz(pg, sol.values)) fail(p, 1, m);
  for (const auto& m : check_rate_bounds(pg, sol.values)) fail(p, 2, m);

  Game urgent = make_all_urgent(pg);
  for (const Rational& nu : {Rational(0), Rational(1, 3), Rational(1)}) check_iteration(p, urgent, nu);

  for (const auto& w : sol.trace) {
    std::vector<std::optional<Rational>> xs(pg.size());
    for (std::size_t l = 0; l < pg.size(); ++l) xs[l] = sol.values[l].evaluate(w.r).value();
    Game window = make_all_urgent(waiting(pg, w.r, xs).game);
    auto lines = line_family(window);
    for (std::size_t l = 0; l < pg.size(); ++l)
      for (const auto& x : sol.values[l].breakpoints()) {
        if (x < w.next_r || x > w.r) continue;
        Rational v = sol.values[l].evaluate(x).value();
        bool on = std::any_of(lines.begin(), lines.end(), [&](const Affine& a) { return a.at(x) == v; });
        if (!on) fail(p, 4, pg.location(l).name + " at x=" + x.str() + " in window ending " + w.r.str());
      }
  }

  // Starts: every location at spread sample points plus a quarter grid.
  std::vector<Rational> starts{0, Rational(1, 4), Rational(1, 2), Rational(3, 4), 1};
  for (std::size_t i = 0; i < pts.size(); i += std::max<std::size_t>(1, pts.size() / 6)) starts.push_back(pts[i]);
  std::sort(starts.begin(), starts.end());
  starts.erase(std::unique(starts.begin(), starts.end()), starts.end());
  std::vector<Rational> all_bps;
  for (const auto& f : sol.values)
    for (const auto& b : f.breakpoints()) all_bps.push_back(b);
  for (std::size_t l = 0; l < pg.size(); ++l) {
    if (pg.location(l).is_final()) continue;
    for (const auto& x : starts) {
      Rational val = sol.values[l].evaluate(x).value();
      SwitchingController mn(sol.strategies->min, sol.values);
      FpController mx(sol.strategies->max);
      PlayResult r = play_out(pg, mn, mx, Config{l, x}, 10000);
      ++p.plays;
      if (!r.reached || *r.cost != val)
        fail(p, 5, pg.location(l).name + " at x=" + x.str() + ": value " + val.str() + ", play " +
                       (r.reached ? r.cost->str() : std::string("unresolved")));
      FpStrategy opp = random_fp_strategy(pg, Owner::Max, all_bps, rng);
      SwitchingController mn2(sol.strategies->min, sol.values);
      FpController mx2(opp);
      PlayResult q = play_out(pg, mn2, mx2, Config{l, x}, 10000);
      if (!q.reached || *q.cost > val)
        fail(p, 5, "random opponent from " + pg.location(l).name + " at x=" + x.str() + " beats the value");
    }
  }

  BigInt budget = cutpoint_budget(pg);
  for (std::size_t l = 0; l < pg.size(); ++l)
    if (BigInt(static_cast<unsigned long>(interior_cutpoints(sol.values[l]))) > budget)
      fail(p, 6, pg.location(l).name);
  return p;
}

RegionProperties check_region_properties(const Game& g) {
  RegionProperties p;
  Solution sol = solve_reset_acyclic(g);
  auto pts = sample_points(sol.values, 0, g.clock_bound(), 8);
  for (const auto& x : pts)
    for (const auto& v : bellman_check_regions(g, sol.values, x))
      if (!v.ok) {
        p.bellman = false;
        if (p.failures.size() < 10)
          p.failures.push_back(g.location(v.location).name + " at x=" + x.str() + ": " + v.actual.str() + " vs " +
                               v.expected.str());
      }
  for (const auto& m : check_lipschitz(g, sol.values)) {
    p.bellman = false;
    p.failures.push_back("lipschitz: " + m);
  }
  if (check_sptg(g, 1)) {
    Solution direct = solve_sptg(g, SolveOptions{false, true, true});
    if (direct.values != sol.values) {
      p.matches_sptg_solver = false;
      p.failures.push_back("region pipeline differs from the direct solver");
    }
  }
  return p;
}

}  // namespace ptg::testing
