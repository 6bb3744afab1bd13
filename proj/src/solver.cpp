#include "ptg/solver.hpp"

#include "ptg/errors.hpp"
#include "ptg/parallel.hpp"
#include "ptg/urgent.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

namespace ptg {

PruneResult prune_infinite(const Game& g) {
  if (!check_sptg(g, g.clock_bound())) throw NonSptg("pruning needs an SPTG");
  auto vals = solve_instant(make_all_urgent(g), g.clock_bound());
  const std::size_t n = g.size();
  PruneResult pr;
  pr.infinite.assign(n, std::nullopt);
  for (std::size_t l = 0; l < n; ++l)
    if (!vals[l].is_finite()) pr.infinite[l] = vals[l];

  // A Min location cut off from every finite successor cannot reach a final any more.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t l = 0; l < n; ++l) {
      if (pr.infinite[l] || g.location(l).is_final()) continue;
      bool any = false;
      for (auto t : g.outgoing(l))
        if (!pr.infinite[g.transition(t).to]) any = true;
      if (!any) {
        pr.infinite[l] = g.location(l).owner == Owner::Min ? ExtValue::plus_inf() : ExtValue::minus_inf();
        changed = true;
      }
    }
  }

  std::vector<std::size_t> remap(n, n);
  std::vector<Location> locs;
  for (std::size_t l = 0; l < n; ++l) {
    if (pr.infinite[l]) continue;
    remap[l] = locs.size();
    pr.kept_locations.push_back(l);
    locs.push_back(g.location(l));
  }
  if (locs.empty()) throw EmptyGame("every location has an infinite value");
  std::vector<Transition> trans;
  for (std::size_t t = 0; t < g.transitions().size(); ++t) {
    Transition tr = g.transition(t);
    if (remap[tr.from] == n || remap[tr.to] == n) continue;
    tr.from = remap[tr.from];
    tr.to = remap[tr.to];
    pr.kept_transitions.push_back(t);
    trans.push_back(tr);
  }
  pr.game = Game(g.clock_bound(), std::move(locs), std::move(trans));
  return pr;
}

WaitingGame waiting(const Game& g, const Rational& r, const std::vector<std::optional<Rational>>& x_values) {
  WaitingGame w;
  w.base_locations = g.size();
  w.base_transitions = g.transitions().size();
  w.clone.assign(g.size(), std::nullopt);
  std::vector<Location> locs = g.locations();
  std::vector<Transition> trans = g.transitions();
  for (auto& t : trans) t.guard = Guard::closed(0, r);
  for (std::size_t l = 0; l < g.size(); ++l) {
    const Location& loc = g.location(l);
    if (loc.is_final() || loc.urgent) continue;
    if (l >= x_values.size() || !x_values[l])
      throw MissingTerminalValue("no value at " + r.str() + " for '" + loc.name + "'");
    Location c;
    c.name = loc.name + "^f";
    c.owner = Owner::Final;
    c.final_cost = Affine{Rational(-loc.rate), r * Rational(loc.rate) + *x_values[l]};
    w.clone[l] = locs.size();
    trans.push_back(Transition{l, locs.size(), Guard::closed(0, r), false, 0});
    locs.push_back(std::move(c));
  }
  w.game = Game(r, std::move(locs), std::move(trans));
  return w;
}

Game make_urgent(const Game& g, const std::vector<bool>& which) {
  std::vector<Location> locs = g.locations();
  for (std::size_t l = 0; l < locs.size() && l < which.size(); ++l)
    if (which[l] && !locs[l].is_final()) locs[l].urgent = true;
  return Game(g.clock_bound(), std::move(locs), g.transitions());
}

std::vector<std::size_t> slope_test(const Game& g, const std::vector<ExtValue>& at_b,
                                    const std::vector<ExtValue>& at_a, const Rational& a, const Rational& b) {
  std::vector<std::size_t> bad;
  for (std::size_t l = 0; l < g.size(); ++l) {
    const Location& loc = g.location(l);
    if (loc.is_final() || loc.urgent) continue;
    if (!at_a[l].is_finite() || !at_b[l].is_finite()) {
      bad.push_back(l);
      continue;
    }
    Rational chord = (at_b[l].value() - at_a[l].value()) / (b - a);
    Rational bound = Rational(-loc.rate);
    bool ok = loc.owner == Owner::Min ? chord >= bound : chord <= bound;
    if (!ok) bad.push_back(l);
  }
  return bad;
}

BigInt cutpoint_budget(const Game& g) {
  BigInt base = BigInt(static_cast<signed long>(std::max<std::int64_t>(g.max_weight(), 1))) *
                BigInt(static_cast<unsigned long>(g.size() * g.size()));
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), 2 * g.size() + 2);
  return out;
}

namespace {

// Strategy choice of one location on one accepted segment, as a transition of
// the original game or the option to stop and wait until the window's end.
struct Choice {
  bool cash = false;
  std::size_t transition = 0;
};

struct Segment {
  Rational a, b, r;
  std::vector<std::optional<Choice>> max, nc;
};

std::optional<Choice> to_choice(const std::optional<std::size_t>& t, std::size_t base_transitions) {
  if (!t) return std::nullopt;
  if (*t >= base_transitions) return Choice{true, 0};
  return Choice{false, *t};
}

// Evaluates the all-urgent game at each candidate, in parallel when threads > 1.
std::vector<InstantResult> evaluate_batch(const Game& gp, const std::vector<Rational>& at, int threads) {
  std::vector<InstantResult> out(at.size());
  std::vector<std::exception_ptr> errors(at.size());
  const long n = static_cast<long>(at.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads) if (threads > 1)
  for (long i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    try {
      out[k] = solve_instant_detailed(gp, at[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

// Chains the per-segment choices into finite positional strategies. Stopping to
// collect the clone's cost means waiting until the window's end and then
// playing whatever is optimal there.
FpStrategy assemble(const Game& g, const std::vector<Segment>& segs_right_to_left,
                    const std::vector<std::optional<std::size_t>>& at_one, bool max_side) {
  const std::size_t n = g.size();
  const Owner who = max_side ? Owner::Max : Owner::Min;
  std::vector<std::optional<Move>> anchor(n);
  for (std::size_t l = 0; l < n; ++l)
    if (at_one[l]) anchor[l] = Move::now(*at_one[l]);
  std::vector<std::vector<FpPiece>> pieces(n);
  std::vector<std::optional<Move>> leftmost(n);
  Rational window = 1;
  for (const auto& s : segs_right_to_left) {
    if (s.r != window) {
      anchor = leftmost;
      window = s.r;
    }
    const auto& choices = max_side ? s.max : s.nc;
    for (std::size_t l = 0; l < n; ++l) {
      if (g.location(l).owner != who || !choices[l]) continue;
      Move m;
      if (!choices[l]->cash) {
        m = Move::now(choices[l]->transition);
      } else {
        if (!anchor[l]) throw Error("no move to chain at " + s.r.str() + " for '" + g.location(l).name + "'");
        m = anchor[l]->kind == Move::Kind::Now ? Move::wait_until(s.r, anchor[l]->transition) : *anchor[l];
      }
      pieces[l].push_back(FpPiece{s.a, s.b, m});
      leftmost[l] = m;
    }
  }
  FpStrategy out(n);
  for (std::size_t l = 0; l < n; ++l) {
    std::reverse(pieces[l].begin(), pieces[l].end());
    // At the bound itself every location plays its instant choice.
    if (g.location(l).owner == who && at_one[l]) pieces[l].push_back(FpPiece{1, 1, Move::now(*at_one[l])});
    out.set(l, std::move(pieces[l]));
  }
  return out;
}

}  // namespace

Solution solve(const Game& g, const SolveOptions& opt) {
  if (g.clock_bound() != 1 || !check_sptg(g, 1)) throw NonSptg("solve needs an SPTG with clock bound 1");
  const std::size_t n = g.size();
  const std::size_t base_t = g.transitions().size();
  const int threads = opt.speculative ? parallel::thread_count() : 1;

  InstantResult at1 = solve_instant_detailed(make_all_urgent(g), 1);
  for (std::size_t l = 0; l < n; ++l)
    if (!at1.values[l].is_finite())
      throw InfiniteValue("'" + g.location(l).name + "' has value " + at1.values[l].str());

  std::vector<std::vector<std::pair<Rational, Rational>>> pts(n);
  for (std::size_t l = 0; l < n; ++l) pts[l].emplace_back(1, at1.values[l].value());
  std::vector<ExtValue> f_r = at1.values;
  std::vector<Segment> segments;
  Solution sol;
  sol.mode = SolveMode::Sptg;
  sol.clock_bound = 1;

  Rational r = 1;
  while (r > 0) {
    std::vector<std::optional<Rational>> xs(n);
    for (std::size_t l = 0; l < n; ++l) xs[l] = f_r[l].value();
    WaitingGame w = waiting(g, r, xs);
    Game gp = make_all_urgent(w.game);
    std::vector<Rational> cps = possible_cutpoints(gp, r);

    SweepWindow win;
    win.r = r;
    Rational b = r;
    std::vector<ExtValue> fb = f_r;
    std::vector<std::pair<Rational, Rational>> accepted;  // (a, b)
    // cps is sorted and ends with r; walk it leftwards
    std::size_t next = cps.size() - 1;
    bool stop = false;
    while (!stop && next > 0) {
      std::size_t batch = std::min<std::size_t>(next, threads > 1 ? static_cast<std::size_t>(2 * threads) : 1);
      std::vector<Rational> at;
      for (std::size_t k = 0; k < batch; ++k) at.push_back(cps[next - 1 - k]);
      auto results = evaluate_batch(gp, at, threads);
      for (std::size_t k = 0; k < batch; ++k) {
        const Rational& a = at[k];
        std::vector<ExtValue> x(results[k].values.begin(), results[k].values.begin() + static_cast<long>(n));
        auto bad = slope_test(g, fb, x, a, b);
        for (std::size_t l = 0; l < n && bad.empty(); ++l)
          if (!x[l].is_finite()) bad.push_back(l);
        if (!bad.empty()) {
          win.rejection = Rejection{a, b, bad};
          stop = true;
          break;
        }
        for (std::size_t l = 0; l < n; ++l) pts[l].emplace_back(a, x[l].value());
        accepted.emplace_back(a, b);
        fb = std::move(x);
        b = a;
        ++win.accepted;
        if (b == 0) {
          stop = true;
          break;
        }
      }
      next -= batch;
    }
    if (b == r) throw BudgetExceeded("sweep made no progress below " + r.str());
    win.next_r = b;
    sol.trace.push_back(win);

    if (opt.strategies) {
      std::vector<Rational> mids;
      for (const auto& [a, bb] : accepted) mids.push_back((a + bb) / 2);
      auto res = evaluate_batch(gp, mids, parallel::thread_count());
      for (std::size_t k = 0; k < accepted.size(); ++k) {
        Segment s{accepted[k].first, accepted[k].second, r, std::vector<std::optional<Choice>>(n),
                  std::vector<std::optional<Choice>>(n)};
        for (std::size_t l = 0; l < n; ++l) {
          auto c = to_choice(res[k].choice[l], base_t);
          if (g.location(l).owner == Owner::Max) s.max[l] = c;
          if (g.location(l).owner == Owner::Min) s.nc[l] = c;
        }
        segments.push_back(std::move(s));
      }
    }
    r = b;
    f_r = fb;
  }

  for (std::size_t l = 0; l < n; ++l) {
    std::reverse(pts[l].begin(), pts[l].end());
    sol.values.emplace_back(CostFunction::interpolate(pts[l]));
  }

  if (opt.check_budget) {
    BigInt cap = cutpoint_budget(g);
    for (std::size_t l = 0; l < n; ++l) {
      BigInt cnt = static_cast<unsigned long>(sol.values[l].segments().front().cutpoints().size());
      if (cnt > cap) throw BudgetExceeded("'" + g.location(l).name + "' exceeds the cutpoint bound");
    }
  }

  if (opt.strategies) {
    std::vector<std::optional<std::size_t>> max1(n), min1(n);
    for (std::size_t l = 0; l < n; ++l) {
      if (g.location(l).owner == Owner::Max) max1[l] = at1.choice[l];
      if (g.location(l).owner == Owner::Min) min1[l] = at1.choice[l];
    }
    StrategyProfile prof;
    prof.max = assemble(g, segments, max1, true);
    prof.min.nc = assemble(g, segments, min1, false);
    prof.min.attractor = FpStrategy(n);
    auto attr = attractor_strategy(g);
    for (std::size_t l = 0; l < n; ++l)
      if (attr[l]) prof.min.attractor.set(l, {FpPiece{0, 1, Move::now(*attr[l])}});
    prof.min.budget = Rational(static_cast<std::int64_t>(n) - 1) * Rational(g.max_weight()) +
                      Rational(g.max_rate()) * g.clock_bound() + g.max_final();
    sol.strategies = std::move(prof);
  }
  return sol;
}

Solution solve_sptg(const Game& g, const SolveOptions& opt) {
  if (g.clock_bound() != 1 || !check_sptg(g, 1)) throw NonSptg("solve needs an SPTG with clock bound 1");
  const std::size_t n = g.size();
  Solution out;
  out.mode = SolveMode::Sptg;
  out.clock_bound = 1;
  PruneResult pr;
  try {
    pr = prune_infinite(g);
  } catch (const EmptyGame&) {
    auto vals = solve_instant(make_all_urgent(g), 1);
    for (std::size_t l = 0; l < n; ++l) out.values.emplace_back(CostFunction::constant(0, 1, vals[l]));
    return out;
  }
  Solution sub = solve(pr.game, opt);
  out.values.assign(n, ValueFunction());
  for (std::size_t l = 0; l < n; ++l)
    if (pr.infinite[l]) out.values[l] = ValueFunction(CostFunction::constant(0, 1, *pr.infinite[l]));
  for (std::size_t k = 0; k < pr.kept_locations.size(); ++k) out.values[pr.kept_locations[k]] = sub.values[k];

  for (auto w : sub.trace) {
    if (w.rejection)
      for (auto& l : w.rejection->locations) l = pr.kept_locations[l];
    out.trace.push_back(std::move(w));
  }

  if (sub.strategies) {
    auto lift = [&](const FpStrategy& s) {
      FpStrategy o(n);
      for (std::size_t k = 0; k < pr.kept_locations.size(); ++k) {
        auto ps = s.pieces(k);
        for (auto& p : ps) p.move.transition = pr.kept_transitions[p.move.transition];
        o.set(pr.kept_locations[k], std::move(ps));
      }
      return o;
    };
    StrategyProfile prof;
    prof.max = lift(sub.strategies->max);
    prof.min.nc = lift(sub.strategies->min.nc);
    prof.min.attractor = lift(sub.strategies->min.attractor);
    prof.min.budget = sub.strategies->min.budget;
    out.strategies = std::move(prof);
  }
  return out;
}

}  // namespace ptg
