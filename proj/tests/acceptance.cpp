// Acceptance checks. `acceptance` runs every criterion, `acceptance <id>` one of
// them. Each prints "criterion <id>: PASS|FAIL - <detail>"; the exit status is
// nonzero when any selected criterion fails.

#include "properties.hpp"
#include "random_games.hpp"

#include "ptg/cli.hpp"
#include "ptg/errors.hpp"
#include "ptg/regions.hpp"
#include "ptg/solver.hpp"
#include "ptg/strategy.hpp"
#include "ptg/urgent.hpp"

#include <json.hpp>
#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

using namespace ptg;
using namespace ptg::testing;
namespace fs = std::filesystem;

namespace {

// Pinned limits.
constexpr long kFig1MaxMs = 1000;
constexpr long kPropertySuiteMaxMs = 120000;
constexpr std::size_t kRandomSptgs = 200;
constexpr std::size_t kMaxSptgDraws = 2000;
constexpr std::uint64_t kSptgSeed = 20240611;
constexpr int kRandomRegionGames = 60;
constexpr std::uint64_t kRegionSeed = 7;
constexpr int kRegionSptgGames = 40;
constexpr std::uint64_t kRegionSptgSeed = 99;
constexpr std::size_t kMinPlaysPerGame = 5;
constexpr std::size_t kPlaySteps = 10000;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fixture(const std::string& name) { return std::string(PTG_FIXTURES) + "/" + name; }

Rational q(const char* s) { return Rational::parse(s); }

ValueFunction pwl(std::vector<std::pair<Rational, Rational>> pts) {
  return ValueFunction(CostFunction::interpolate(pts));
}

long ms_since(std::chrono::steady_clock::time_point t0) {
  return static_cast<long>(
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

int cli(std::vector<std::string> args, std::string* report = nullptr) {
  args.insert(args.begin(), "ptg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (report) *report = out.str();
  return code;
}

Outcome reference_values() {
  Game g = load_game(fixture("fig1.json"));
  auto t0 = std::chrono::steady_clock::now();
  Solution s = solve_sptg(g);
  long ms = ms_since(t0);
  const std::map<std::string, ValueFunction> expected{
      {"l1", pwl({{0, q("-19/2")}, {q("1/4"), -6}, {q("1/2"), q("-11/2")}, {q("3/4"), -2}, {q("9/10"), q("-1/5")},
                  {1, 0}})},
      {"l2", pwl({{0, q("-19/2")}, {q("1/4"), -6}, {q("1/2"), q("-11/2")}, {q("3/4"), -2}, {1, 1}})},
      {"l3", pwl({{0, -10}, {q("1/4"), -6}, {q("1/2"), q("-11/2")}, {1, -7}})},
      {"l4", pwl({{0, -4}, {1, -7}})},
      {"l5", pwl({{0, -14}, {q("3/4"), -2}, {1, 1}})},
      {"l6", pwl({{0, -11}, {1, 1}})},
      {"l7", pwl({{0, -16}, {1, 0}})},
  };
  std::string wrong;
  for (const auto& [name, f] : expected)
    if (!(s.values[g.index_of(name)] == f)) wrong += " " + name;
  bool pass = wrong.empty() && ms < kFig1MaxMs;
  return {pass, (wrong.empty() ? "all seven value functions exact" : "mismatch at" + wrong) + ", " +
                    std::to_string(ms) + " ms (limit " + std::to_string(kFig1MaxMs) + ")"};
}

std::string trace_text(const Game& g, const Solution& s) {
  std::string t = "r = 1";
  for (const auto& w : s.trace) {
    t += " -> " + w.next_r.str();
    if (w.rejection) {
      t += " [a=" + w.rejection->a.str() + " by";
      for (auto l : w.rejection->locations) t += " " + g.location(l).name;
      t += "]";
    }
  }
  return t;
}

Outcome sweep_ends() {
  Game g = load_game(fixture("fig1.json"));
  Solution s = solve_sptg(g);
  std::vector<Rational> ends{1};
  for (const auto& w : s.trace) ends.push_back(w.next_r);
  bool pass = ends == std::vector<Rational>{1, q("3/4"), q("1/2"), q("1/4"), 0};
  return {pass, trace_text(g, s)};
}

Outcome sweep_attribution() {
  Game g = load_game(fixture("fig1.json"));
  Solution s = solve_sptg(g);
  const std::vector<std::pair<Rational, std::string>> expected{{q("3/4"), "l2"}, {q("1/2"), "l1"}, {q("1/4"), "l2"}};
  bool pass = s.trace.size() == expected.size() + 1 && !s.trace.back().rejection;
  for (std::size_t i = 0; pass && i < expected.size(); ++i) {
    const auto& rej = s.trace[i].rejection;
    pass = rej && rej->b == expected[i].first && rej->locations.size() == 1 &&
           g.location(rej->locations[0]).name == expected[i].second;
  }
  return {pass, "window ends attributed to l2, l1, l2: " + trace_text(g, s)};
}

Outcome sweep_literal_first_rejection() {
  Game g = load_game(fixture("fig1.json"));
  Solution s = solve_sptg(g);
  bool pass = !s.trace.empty() && s.trace[0].rejection && s.trace[0].rejection->a == q("9/10") &&
              s.trace[0].rejection->locations == std::vector<std::size_t>{g.index_of("l1")};
  std::string first = "none";
  if (!s.trace.empty() && s.trace[0].rejection) {
    first = "a=" + s.trace[0].rejection->a.str() + " by";
    for (auto l : s.trace[0].rejection->locations) first += " " + g.location(l).name;
  }
  return {pass, "first rejection expected at a=9/10 by l1, got " + first};
}

Outcome urgent_subgame() {
  Game g = load_game(fixture("subgame_urgent.json"));
  auto f = solve_all_urgent(g, 1);
  const std::size_t l3 = g.index_of("l3");
  bool pass = f[l3].cutpoints() == std::vector<Rational>{q("6/19")};
  for (int i = 0; pass && i <= 38; ++i) {
    Rational x(i, 38);
    pass = f[l3].evaluate(x) == ExtValue(min(Rational(-3) * x - 4, Rational(16) * x - 10));
  }
  Solution s = solve_sptg(g);
  pass = pass && s.values[l3] == ValueFunction(f[l3]);
  std::string cps;
  for (const auto& c : f[l3].cutpoints()) cps += " " + c.str();
  return {pass, "l3 = min(-3x-4, 16x-10), cutpoints:" + cps};
}

Outcome memory_needed() {
  std::string detail;
  bool pass = true;
  for (int w : {1, 10, 1000}) {
    Game g = load_game(fixture("cycle_w" + std::to_string(w) + ".json"));
    const std::size_t l1 = g.index_of("l1"), l2 = g.index_of("l2");
    auto inst = solve_instant(g, 0);
    bool values = inst[l1] == ExtValue(-w) && inst[l2] == ExtValue(-w);

    Solution s = solve_sptg(g);
    // Max's positional choices at l1: back into the cycle, or out to the target.
    bool switching = true, stuck = true;
    for (auto t : g.outgoing(l1)) {
      FpStrategy mx(g.size());
      mx.set(l1, {FpPiece{0, 1, Move::now(t)}});
      for (std::size_t start : {l1, l2}) {
        SwitchingController mn(s.strategies->min, s.values);
        FpController max(mx);
        PlayResult p = play_out(g, mn, max, Config{start, 0}, kPlaySteps);
        switching = switching && p.reached && *p.cost <= -w;
      }
      if (g.transition(t).to == l2) {
        FpController nc(s.strategies->min.nc), max(mx);
        PlayResult p = play_out(g, nc, max, Config{l1, 0}, kPlaySteps);
        stuck = stuck && !p.reached;
      }
    }
    pass = pass && values && switching && stuck;
    detail += "W=" + std::to_string(w) + (values ? " values ok" : " values wrong") +
              (switching ? ", switching <= -W" : ", switching loses") +
              (stuck ? ", first component alone never reaches; " : ", first component alone reaches; ");
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome reset_cycle_rejected() {
  fs::path dir = fs::temp_directory_path() / ("ptg_accept_5_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  std::string report;
  int code = cli({"solve", fixture("fig3.json"), "--out", (dir / "x.json").string()}, &report);
  fs::remove_all(dir);
  nlohmann::json witness;
  try {
    witness = nlohmann::json::parse(report)["witness"];
  } catch (const std::exception&) {
  }
  bool pass = code == kExitResetCycle && witness == nlohmann::json::array({"l0", "l1", "l0"});
  return {pass, "exit " + std::to_string(code) + ", witness " + witness.dump()};
}

Outcome sptg_properties() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(kSptgSeed);
  std::array<std::size_t, 7> failed{};
  std::size_t games = 0, drawn = 0, plays = 0, few_plays = 0;
  std::string first;
  // Games whose non-final locations all have infinite values are drawn again.
  while (games < kRandomSptgs && drawn < kMaxSptgDraws) {
    ++drawn;
    Game g = random_sptg(rng);
    SptgProperties p = check_sptg_properties(g, rng);
    for (std::size_t k = 0; k < 7; ++k) failed[k] += !p.ok[k];
    if (first.empty() && !p.failures.empty()) first = describe(g) + ": " + p.failures.front();
    if (!p.solved || p.plays == 0) continue;
    ++games;
    plays += p.plays;
    few_plays += p.plays < kMinPlaysPerGame;
  }
  long ms = ms_since(t0);
  std::size_t total = 0;
  std::string counts;
  for (std::size_t k = 0; k < 7; ++k) {
    total += failed[k];
    counts += std::string(1, static_cast<char>('a' + k)) + "=" + std::to_string(failed[k]) + " ";
  }
  bool pass = games >= kRandomSptgs && total == 0 && few_plays == 0 && ms < kPropertySuiteMaxMs;
  std::string detail = std::to_string(games) + " games with a finite non-final location (" + std::to_string(drawn) +
                       " drawn), failures " + counts + "- " + std::to_string(plays) + " plays, " +
                       std::to_string(ms) + " ms";
  if (few_plays) detail += ", " + std::to_string(few_plays) + " games with fewer than 5 plays";
  if (!first.empty()) detail += "; first: " + first;
  return {pass, detail};
}

Outcome region_pipeline() {
  std::size_t bad = 0, mismatched = 0, compared = 0;
  std::string first;
  std::mt19937_64 rng(kRegionSeed);
  for (int i = 0; i < kRandomRegionGames; ++i) {
    Game g = random_reset_acyclic(rng);
    RegionProperties p = check_region_properties(g);
    bad += !p.bellman;
    if (first.empty() && !p.failures.empty()) first = describe(g) + ": " + p.failures.front();
  }
  std::mt19937_64 srng(kRegionSptgSeed);
  for (int i = 0; i < kRegionSptgGames; ++i) {
    Game g = random_sptg(srng);
    RegionProperties p = check_region_properties(g);
    ++compared;
    bad += !p.bellman;
    mismatched += !p.matches_sptg_solver;
    if (first.empty() && !p.failures.empty()) first = describe(g) + ": " + p.failures.front();
  }
  std::string detail = std::to_string(kRandomRegionGames) + " reset-acyclic games with clock bound <= 2, " +
                       std::to_string(bad) + " one-step failures; " + std::to_string(compared) +
                       " SPTGs, " + std::to_string(mismatched) + " differ from the direct solver";
  if (!first.empty()) detail += "; first: " + first;
  return {bad == 0 && mismatched == 0, detail};
}

Outcome determinism() {
  const std::vector<std::string> corpus{"fig1", "cycle_w1", "cycle_w10", "cycle_w1000", "subgame_urgent",
                                        "bound2", "reset_chain", "guarded"};
  fs::path dir = fs::temp_directory_path() / ("ptg_accept_8_" + std::to_string(::getpid()));
  fs::remove_all(dir);
  std::string differ;
  const char* threads[] = {"1", "4"};
  for (int run = 0; run < 2; ++run) {
    ::setenv("PTG_THREADS", threads[run], 1);
    fs::create_directories(dir / std::to_string(run));
    for (const auto& name : corpus)
      if (cli({"solve", fixture(name + ".json"), "--out", (dir / std::to_string(run) / (name + ".json")).string()}) !=
          kExitOk)
        differ += " " + name + "(failed)";
  }
  ::unsetenv("PTG_THREADS");
  for (const auto& name : corpus)
    if (slurp(dir / "0" / (name + ".json")) != slurp(dir / "1" / (name + ".json"))) differ += " " + name;
  fs::remove_all(dir);
  return {differ.empty(), std::to_string(corpus.size()) + " solution files, runs with 1 and 4 threads" +
                              (differ.empty() ? " byte-identical" : ", differing:" + differ)};
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"1", reference_values},
    {"2a", sweep_ends},
    {"2b", sweep_attribution},
    {"2c", sweep_literal_first_rejection},
    {"3", urgent_subgame},
    {"4", memory_needed},
    {"5", reset_cycle_rejected},
    {"6", sptg_properties},
    {"7", region_pipeline},
    {"8", determinism},
};

}  // namespace

int main(int argc, char** argv) {
  std::string only = argc > 1 ? argv[1] : "";
  bool any = false, all_pass = true;
  for (const auto& [id, check] : kCriteria) {
    if (!only.empty() && id != only) continue;
    any = true;
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all_pass = all_pass && o.pass;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << " - " << o.detail << std::endl;
  }
  if (!any) {
    std::cerr << "unknown criterion '" << only << "'\n";
    return 2;
  }
  return all_pass ? 0 : 1;
}
