// OpenMP kernels against their serial references.

#include "ptg/game.hpp"
#include "ptg/urgent.hpp"

#include <benchmark/benchmark.h>

#include <string>

using namespace ptg;

namespace {

Game reference_game() { return make_all_urgent(load_game(std::string(PTG_FIXTURES) + "/fig1.json")); }

// n urgent locations in a ring, each with an exit to its own final; weights up to w.
Game ring(std::size_t n, std::int64_t w) {
  std::vector<Location> locs;
  std::vector<Transition> trans;
  for (std::size_t i = 0; i < n; ++i)
    locs.push_back(Location{"q" + std::to_string(i), i % 2 ? Owner::Max : Owner::Min, 0, true, {}});
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t k = static_cast<std::int64_t>(i);
    locs.push_back(Location{"f" + std::to_string(i), Owner::Final, 0, false, {k - 2, -k}});
    trans.push_back(Transition{i, (i + 1) % n, Guard::closed(0, 1), false, (k * 3) % (2 * w + 1) - w + 1});
    trans.push_back(Transition{i, n + i, Guard::closed(0, 1), false, (k * 5) % (2 * w + 1) - w});
  }
  return Game(1, std::move(locs), std::move(trans));
}

template <class F>
void run(benchmark::State& state, const Game& g, F f) {
  for (auto _ : state) benchmark::DoNotOptimize(f(g, Rational(1)));
}

void BM_Cutpoints(benchmark::State& s) { run(s, reference_game(), possible_cutpoints); }
void BM_CutpointsSerial(benchmark::State& s) { run(s, reference_game(), possible_cutpoints_serial); }
void BM_CutpointsRing(benchmark::State& s) { run(s, ring(12, 24), possible_cutpoints); }
void BM_CutpointsRingSerial(benchmark::State& s) { run(s, ring(12, 24), possible_cutpoints_serial); }
void BM_AllUrgent(benchmark::State& s) { run(s, reference_game(), solve_all_urgent); }
void BM_AllUrgentSerial(benchmark::State& s) { run(s, reference_game(), solve_all_urgent_serial); }
void BM_AllUrgentRing(benchmark::State& s) { run(s, ring(12, 24), solve_all_urgent); }
void BM_AllUrgentRingSerial(benchmark::State& s) { run(s, ring(12, 24), solve_all_urgent_serial); }

}  // namespace

BENCHMARK(BM_Cutpoints)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CutpointsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CutpointsRing)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_CutpointsRingSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AllUrgent)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AllUrgentSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AllUrgentRing)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_AllUrgentRingSerial)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
