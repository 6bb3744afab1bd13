#include "random_games.hpp"

#include "ptg/errors.hpp"
#include "ptg/solver.hpp"
#include "ptg/urgent.hpp"

#include <catch_amalgamated.hpp>

#include <chrono>

using namespace ptg;
using namespace ptg::testing;

namespace {

std::string fixture(const char* name) { return std::string(PTG_FIXTURES) + "/" + name; }

Rational q(const char* s) { return Rational::parse(s); }

ValueFunction pwl(std::vector<std::pair<Rational, Rational>> pts) {
  return ValueFunction(CostFunction::interpolate(pts));
}

Location min_loc(const char* name, std::int64_t rate, bool urgent = false) {
  return Location{name, Owner::Min, rate, urgent, {}};
}
Location final_loc(const char* name, Affine phi = {0, 0}) { return Location{name, Owner::Final, 0, false, phi}; }
Transition edge(std::size_t a, std::size_t b, std::int64_t w = 0) {
  return Transition{a, b, Guard::closed(0, 1), false, w};
}

std::vector<ExtValue> ext(std::initializer_list<Rational> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("reference game values are exact") {
  Game g = load_game(fixture("fig1.json"));
  auto t0 = std::chrono::steady_clock::now();
  Solution s = solve_sptg(g);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  CHECK(ms < 1000);
  const auto& v = s.values;
  CHECK(v[0] == pwl({{0, q("-19/2")}, {q("1/4"), -6}, {q("1/2"), q("-11/2")}, {q("3/4"), -2}, {q("9/10"), q("-1/5")},
                     {1, 0}}));
  CHECK(v[1] == pwl({{0, q("-19/2")}, {q("1/4"), -6}, {q("1/2"), q("-11/2")}, {q("3/4"), -2}, {1, 1}}));
  CHECK(v[2] == pwl({{0, -10}, {q("1/4"), -6}, {q("1/2"), q("-11/2")}, {1, -7}}));
  CHECK(v[3] == pwl({{0, -4}, {1, -7}}));
  CHECK(v[4] == pwl({{0, -14}, {q("3/4"), -2}, {1, 1}}));
  CHECK(v[5] == pwl({{0, -11}, {1, 1}}));
  CHECK(v[6] == pwl({{0, -16}, {1, 0}}));
  CHECK(v[7] == pwl({{0, 0}, {1, 0}}));
}

TEST_CASE("reference game sweep trace") {
  Solution s = solve_sptg(load_game(fixture("fig1.json")));
  std::vector<Rational> ends{1};
  for (const auto& w : s.trace) ends.push_back(w.next_r);
  CHECK(ends == std::vector<Rational>{1, q("3/4"), q("1/2"), q("1/4"), 0});
  REQUIRE(s.trace.size() == 4);
  CHECK(s.trace[0].rejection->a == q("14/19"));
  CHECK(s.trace[0].rejection->b == q("3/4"));
  CHECK(s.trace[0].rejection->locations == std::vector<std::size_t>{1});
  CHECK(s.trace[1].rejection->b == q("1/2"));
  CHECK(s.trace[1].rejection->locations == std::vector<std::size_t>{0});
  CHECK(s.trace[2].rejection->b == q("1/4"));
  CHECK(s.trace[2].rejection->locations == std::vector<std::size_t>{1});
  CHECK_FALSE(s.trace[3].rejection);
  for (const auto& w : s.trace) CHECK(w.next_r < w.r);
}

TEST_CASE("pruning infinite locations") {
  auto ref = prune_infinite(load_game(fixture("fig1.json")));
  CHECK(ref.game.size() == 8);
  for (const auto& i : ref.infinite) CHECK_FALSE(i);

  // m cannot reach the final; d drives the cost down forever.
  Game g(1, {min_loc("m", 1), min_loc("d", 0), min_loc("ok", 2), final_loc("f")},
         {edge(0, 0, 1), edge(1, 1, -1), edge(1, 3), edge(2, 3, 1)});
  auto p = prune_infinite(g);
  CHECK(p.infinite[0] == std::optional<ExtValue>(ExtValue::plus_inf()));
  CHECK(p.infinite[1] == std::optional<ExtValue>(ExtValue::minus_inf()));
  CHECK_FALSE(p.infinite[2]);
  CHECK(p.kept_locations == std::vector<std::size_t>{2, 3});
  CHECK(p.game.transitions().size() == 1);

  Solution s = solve_sptg(g);
  CHECK(s.values[0] == ValueFunction(CostFunction::constant(0, 1, ExtValue::plus_inf())));
  CHECK(s.values[1] == ValueFunction(CostFunction::constant(0, 1, ExtValue::minus_inf())));
  CHECK(s.values[2] == pwl({{0, 1}, {1, 1}}));

  Game none(1, {min_loc("m", 1)}, {edge(0, 0)});
  CHECK_THROWS_AS(prune_infinite(none), EmptyGame);
}

TEST_CASE("waiting construction") {
  Game one(1, {min_loc("l", 5), final_loc("f")}, {edge(0, 1)});
  auto w = waiting(one, 1, {Rational(0), std::nullopt});
  REQUIRE(w.clone[0]);
  CHECK(w.game.location(*w.clone[0]).final_cost == Affine{-5, 5});
  CHECK(w.game.size() == 3);
  CHECK(w.game.transitions().size() == 2);
  CHECK(w.game.transition(1).weight == 0);

  Game g = load_game(fixture("fig1.json"));
  std::vector<std::optional<Rational>> at1{0, 1, -7, -7, 1, 1, 0, std::nullopt};
  auto wf = waiting(g, 1, at1);
  CHECK(wf.game.finals().size() == 8);
  CHECK(wf.game.location(*wf.clone[6]).final_cost == Affine{16, -16});
  CHECK(check_sptg(wf.game, 1));

  std::vector<std::optional<Rational>> at34{-2, -2, q("-25/4"), q("-25/4"), -2, -2, -4, std::nullopt};
  auto w34 = waiting(g, q("3/4"), at34);
  CHECK(w34.game.location(*w34.clone[0]).final_cost == Affine{2, q("-7/2")});
  CHECK(check_sptg(w34.game, q("3/4")));

  at1[2] = std::nullopt;
  CHECK_THROWS_AS(waiting(g, 1, at1), MissingTerminalValue);
}

TEST_CASE("making locations urgent") {
  Game g = load_game(fixture("fig1.json"));
  CHECK(make_urgent(g, std::vector<bool>(8, false)) == g);
  Game all = make_urgent(g, {true, true, true, true, true, true, true, false});
  CHECK_NOTHROW(solve_instant(all, 1));
  Game one = make_urgent(g, {false, false, true, false, false, false, false, false});
  std::size_t flipped = 0;
  for (std::size_t l = 0; l < 8; ++l) flipped += one.location(l).urgent != g.location(l).urgent;
  CHECK(flipped == 1);
  CHECK(one.location(2).urgent);
}

TEST_CASE("slope test follows the rate bounds") {
  Game g(1, {min_loc("l1", -2), Location{"l2", Owner::Max, -14, false, {}}, final_loc("f")},
         {edge(0, 1), edge(1, 0), edge(0, 2), edge(1, 2)});
  auto at = [](Rational l1, Rational l2) { return ext({l1, l2, 0}); };
  // Min location of rate -2: a chord of 12 is allowed, 1 is too steep downwards.
  CHECK(slope_test(g, at(q("-1/5"), 0), at(-2, 0), q("3/4"), q("9/10")).empty());
  CHECK(slope_test(g, at(q("1/10"), 0), at(0, 0), 0, q("1/10")) == std::vector<std::size_t>{0});
  // Max location of rate -14: chord -16 stays below 14; 15 does not.
  CHECK(slope_test(g, at(q("1/2"), -4), at(0, 0), q("3/4"), 1).empty());
  CHECK(slope_test(g, at(q("1/2"), q("15/4")), at(0, 0), q("3/4"), 1) == std::vector<std::size_t>{1});

  Game flat(1, {min_loc("l", 0), final_loc("f")}, {edge(0, 1)});
  CHECK(slope_test(flat, ext({3, 0}), ext({3, 0}), 0, 1).empty());
}

TEST_CASE("single waiting location") {
  for (std::int64_t c : {-3, 0, 2}) {
    Game g(1, {min_loc("l", c), final_loc("f")}, {edge(0, 1)});
    Solution s = solve_sptg(g);
    for (int i = 0; i <= 8; ++i) {
      Rational x(i, 8);
      CHECK(s.values[0].evaluate(x) == ExtValue(min(Rational(0), Rational(c) * (1 - x))));
    }
  }
}

TEST_CASE("all-urgent games match the urgent solver") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 40; ++i) {
    Game g = make_all_urgent(random_sptg(rng));
    INFO(describe(g));
    auto pr = prune_infinite(g);
    Solution s = solve(pr.game);
    auto direct = solve_all_urgent(pr.game, 1);
    for (std::size_t l = 0; l < pr.game.size(); ++l) CHECK(s.values[l] == ValueFunction(direct[l]));
  }
}

TEST_CASE("solver preconditions") {
  CHECK_THROWS_AS(solve(load_game(fixture("fig3.json"))), NonSptg);
  Game diverging(1, {min_loc("l", 0), final_loc("f")}, {edge(0, 0, -1), edge(0, 1)});
  CHECK_THROWS_AS(solve(diverging), InfiniteValue);
}

TEST_CASE("speculative evaluation does not change results") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 40; ++i) {
    Game g = random_sptg(rng);
    INFO(describe(g));
    Solution a = solve_sptg(g, SolveOptions{true, true, true});
    Solution b = solve_sptg(g, SolveOptions{true, false, true});
    CHECK(serialize_solution(g, a) == serialize_solution(g, b));
  }
}

TEST_CASE("cutpoint budget") {
  Game g = load_game(fixture("fig1.json"));
  BigInt expect = 1;
  for (int i = 0; i < 18; ++i) expect *= 7 * 64;
  CHECK(cutpoint_budget(g) == expect);
  Solution s = solve_sptg(g);
  for (const auto& v : s.values) CHECK(BigInt(static_cast<unsigned long>(v.breakpoints().size())) <= expect);
}
