#include "ptg/urgent.hpp"

#include "ptg/errors.hpp"
#include "ptg/parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <limits>

namespace ptg {

namespace {

void sort_unique(std::vector<Rational>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void require_all_urgent(const Game& g, const Rational& nu) {
  for (const auto& l : g.locations())
    if (!l.is_final() && !l.urgent)
      throw PreconditionError("location '" + l.name + "' is not urgent");
  if (!check_sptg(g, g.clock_bound())) throw PreconditionError("guards must all be [0, r] without resets");
  if (nu < 0 || nu > g.clock_bound())
    throw PreconditionError("valuation " + nu.str() + " outside [0, " + g.clock_bound().str() + "]");
}

std::size_t to_size_cap(const BigInt& b) {
  if (b > BigInt(std::to_string(std::numeric_limits<std::size_t>::max() / 2)))
    return std::numeric_limits<std::size_t>::max() / 2;
  return static_cast<std::size_t>(std::stoull(b.get_str()));
}

std::vector<Affine> distinct_final_costs(const Game& g) {
  std::vector<Affine> phis;
  for (auto f : g.finals()) {
    const Affine& a = g.location(f).final_cost;
    if (std::find(phis.begin(), phis.end(), a) == phis.end()) phis.push_back(a);
  }
  return phis;
}

// Crossings in [0, r] of the lines k_i + phi_i and k_j + phi_j with |k_j - k_i| <= span.
void crossings(const Affine& pi, const Affine& pj, const BigInt& span, const Rational& r,
               std::vector<Rational>& out) {
  if (pi.slope == pj.slope) return;
  Rational ds = pi.slope - pj.slope;
  Rational dc = pj.intercept - pi.intercept;
  // x = (dc + d) / ds must lie in [0, r]
  Rational e0 = -dc, e1 = r * ds - dc;
  if (ds < 0) std::swap(e0, e1);
  BigInt lo = e0.ceil(), hi = e1.floor();
  if (lo < -span) lo = -span;
  if (hi > span) hi = span;
  for (BigInt d = lo; d <= hi; ++d) out.push_back((dc + Rational(d)) / ds);
}

std::vector<Rational> cutpoints_impl(const Game& g, const Rational& r, int threads) {
  auto phis = distinct_final_costs(g);
  BigInt span = BigInt(static_cast<signed long>(2 * g.size() - 1)) * BigInt(static_cast<signed long>(g.max_weight()));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < phis.size(); ++i)
    for (std::size_t j = i + 1; j < phis.size(); ++j) pairs.emplace_back(i, j);

  std::vector<std::vector<Rational>> partial(pairs.size());
  const long np = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long p = 0; p < np; ++p) {
    auto [i, j] = pairs[static_cast<std::size_t>(p)];
    crossings(phis[i], phis[j], span, r, partial[static_cast<std::size_t>(p)]);
    sort_unique(partial[static_cast<std::size_t>(p)]);
  }
  std::vector<Rational> out{Rational(0), r};
  for (auto& v : partial) out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  sort_unique(out);
  return out;
}

std::vector<CostFunction> assemble(const Game& g, const std::vector<Rational>& cps,
                                   const std::vector<std::vector<ExtValue>>& vals) {
  std::vector<CostFunction> out;
  out.reserve(g.size());
  for (std::size_t l = 0; l < g.size(); ++l) {
    const ExtValue& first = vals.front()[l];
    if (!first.is_finite()) {
      for (const auto& v : vals)
        if (v[l] != first) throw PreconditionError("value of '" + g.location(l).name + "' is partially infinite");
      out.push_back(CostFunction::constant(cps.front(), cps.back(), first));
      continue;
    }
    std::vector<std::pair<Rational, Rational>> pts;
    pts.reserve(cps.size());
    for (std::size_t i = 0; i < cps.size(); ++i) {
      if (!vals[i][l].is_finite())
        throw PreconditionError("value of '" + g.location(l).name + "' is partially infinite");
      pts.emplace_back(cps[i], vals[i][l].value());
    }
    out.push_back(CostFunction::interpolate(pts));
  }
  return out;
}

std::vector<CostFunction> solve_all_urgent_impl(const Game& g, const Rational& r, int threads) {
  require_all_urgent(g, r);
  auto cps = threads > 1 ? possible_cutpoints(g, r) : possible_cutpoints_serial(g, r);
  std::vector<std::vector<ExtValue>> vals(cps.size());
  const long n = static_cast<long>(cps.size());
  std::vector<std::exception_ptr> errors(cps.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (long i = 0; i < n; ++i) {
    auto k = static_cast<std::size_t>(i);
    try {
      vals[k] = solve_instant(g, cps[k]);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return assemble(g, cps, vals);
}

}  // namespace

BigInt iteration_bound(const Game& g) {
  BigInt n = static_cast<unsigned long>(g.size());
  BigInt nf = static_cast<unsigned long>(g.finals().size());
  BigInt pt = static_cast<signed long>(g.max_weight());
  BigInt pf2 = (g.max_final() * 2).ceil();
  return nf * n * ((2 * n - 1) * pt + pf2 + 1) + n;
}

Rational divergence_cutoff(const Game& g) {
  Rational n = static_cast<std::int64_t>(g.size());
  return -((n - 1) * Rational(g.max_weight())) - g.max_final();
}

InstantResult solve_instant_detailed(const Game& g, const Rational& nu, const RoundObserver& observer) {
  require_all_urgent(g, nu);
  const std::size_t n = g.size();
  InstantResult res;
  res.values.assign(n, ExtValue::plus_inf());
  res.choice.assign(n, std::nullopt);
  res.settle_round.assign(n, 0);
  for (auto f : g.finals()) res.values[f] = ExtValue(g.location(f).final_cost.at(nu));
  const ExtValue cutoff(divergence_cutoff(g));
  const std::size_t cap = to_size_cap(iteration_bound(g)) + 1;

  std::vector<ExtValue> next(n);
  while (true) {
    if (++res.rounds > cap) throw BudgetExceeded("value iteration exceeded its round bound");
    bool changed = false;
    for (std::size_t l = 0; l < n; ++l) {
      const Location& loc = g.location(l);
      if (loc.is_final()) {
        next[l] = res.values[l];
        continue;
      }
      const bool is_min = loc.owner == Owner::Min;
      ExtValue best = is_min ? ExtValue::plus_inf() : ExtValue::minus_inf();
      std::optional<std::size_t> arg;
      for (auto t : g.outgoing(l)) {
        const Transition& tr = g.transition(t);
        ExtValue v = ExtValue(tr.weight) + res.values[tr.to];
        if (!arg || (is_min ? v < best : v > best)) {
          best = v;
          arg = t;
        }
      }
      if (best.is_finite() && best < cutoff) best = ExtValue::minus_inf();
      next[l] = best;
      if (best != res.values[l]) {
        changed = true;
        res.settle_round[l] = res.rounds;
        if (is_min) res.choice[l] = arg;
      }
    }
    if (observer) observer(res.rounds, next);
    if (!changed) break;
    res.values.swap(next);
  }

  for (std::size_t l = 0; l < n; ++l) {
    const Location& loc = g.location(l);
    if (loc.owner != Owner::Max) continue;
    std::optional<std::size_t> arg;
    ExtValue best = ExtValue::minus_inf();
    for (auto t : g.outgoing(l)) {
      ExtValue v = ExtValue(g.transition(t).weight) + res.values[g.transition(t).to];
      if (!arg || v > best) {
        best = v;
        arg = t;
      }
    }
    res.choice[l] = arg;
  }
  return res;
}

std::vector<ExtValue> solve_instant(const Game& g, const Rational& nu) {
  return solve_instant_detailed(g, nu).values;
}

Game make_all_urgent(const Game& g) {
  std::vector<Location> locs = g.locations();
  for (auto& l : locs)
    if (!l.is_final()) l.urgent = true;
  return Game(g.clock_bound(), std::move(locs), g.transitions());
}

std::vector<Affine> line_family(const Game& g) {
  const std::int64_t n = static_cast<std::int64_t>(g.size());
  const std::int64_t pt = g.max_weight();
  std::vector<Affine> out;
  for (const auto& phi : distinct_final_costs(g))
    for (std::int64_t k = -(n - 1) * pt; k <= n * pt; ++k) out.push_back(Affine{phi.slope, phi.intercept + k});
  return out;
}

std::vector<Rational> possible_cutpoints(const Game& g, const Rational& r) {
  return cutpoints_impl(g, r, parallel::thread_count());
}

std::vector<Rational> possible_cutpoints_serial(const Game& g, const Rational& r) { return cutpoints_impl(g, r, 1); }

std::vector<Rational> possible_cutpoints_reference(const Game& g, const Rational& r) {
  auto lines = line_family(g);
  auto out = pairwise_intersections(lines, 0, r);
  out.push_back(0);
  out.push_back(r);
  sort_unique(out);
  return out;
}

std::vector<CostFunction> solve_all_urgent(const Game& g, const Rational& r) {
  return solve_all_urgent_impl(g, r, parallel::thread_count());
}

std::vector<CostFunction> solve_all_urgent_serial(const Game& g, const Rational& r) {
  return solve_all_urgent_impl(g, r, 1);
}

std::vector<std::optional<std::size_t>> attractor_strategy(const Game& g) {
  const std::size_t n = g.size();
  const std::size_t unreached = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> level(n, unreached);
  std::vector<std::optional<std::size_t>> choice(n);
  for (auto f : g.finals()) level[f] = 0;
  for (std::size_t round = 1; round <= n; ++round) {
    std::vector<std::size_t> fresh;
    for (std::size_t l = 0; l < n; ++l) {
      if (level[l] != unreached) continue;
      const auto& out = g.outgoing(l);
      if (out.empty()) continue;
      if (g.location(l).owner == Owner::Min) {
        std::optional<std::size_t> best;
        for (auto t : out) {
          std::size_t lv = level[g.transition(t).to];
          if (lv < round && (!best || lv < level[g.transition(*best).to])) best = t;
        }
        if (best) {
          fresh.push_back(l);
          choice[l] = best;
        }
      } else {
        bool all = std::all_of(out.begin(), out.end(), [&](auto t) { return level[g.transition(t).to] < round; });
        if (all) fresh.push_back(l);
      }
    }
    if (fresh.empty()) break;
    for (auto l : fresh) level[l] = round;
  }
  return choice;
}

UntimedStrategies extract_untimed_strategies(const Game& g, const Rational& nu) {
  auto res = solve_instant_detailed(g, nu);
  for (std::size_t l = 0; l < g.size(); ++l)
    if (!res.values[l].is_finite())
      throw NotFinite("'" + g.location(l).name + "' has value " + res.values[l].str());
  UntimedStrategies s;
  s.max.assign(g.size(), std::nullopt);
  s.nc.assign(g.size(), std::nullopt);
  for (std::size_t l = 0; l < g.size(); ++l) {
    if (g.location(l).owner == Owner::Max) s.max[l] = res.choice[l];
    if (g.location(l).owner == Owner::Min) s.nc[l] = res.choice[l];
  }
  s.attractor = attractor_strategy(g);
  return s;
}

}  // namespace ptg
