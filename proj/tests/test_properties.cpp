#include "properties.hpp"
#include "random_games.hpp"

#include "ptg/regions.hpp"

#include <catch_amalgamated.hpp>

#include <iostream>

using namespace ptg;
using namespace ptg::testing;

TEST_CASE("random SPTGs satisfy the value and strategy properties") {
  std::mt19937_64 rng(20240611);
  std::size_t solved = 0;
  for (int i = 0; i < 200; ++i) {
    Game g = random_sptg(rng);
    INFO("game " << i << ": " << describe(g));
    SptgProperties p = check_sptg_properties(g, rng);
    std::string why;
    for (const auto& f : p.failures) why += f + "\n";
    INFO(why);
    for (bool ok : p.ok) CHECK(ok);
    solved += p.solved;
  }
  CHECK(solved >= 100);
}

TEST_CASE("random reset-acyclic games pass the region one-step check") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 60; ++i) {
    Game g = random_reset_acyclic(rng);
    INFO("game " << i << ": " << describe(g));
    RegionProperties p = check_region_properties(g);
    std::string why;
    for (const auto& f : p.failures) why += f + "\n";
    INFO(why);
    CHECK(p.bellman);
  }
}

TEST_CASE("region pipeline equals the direct solver on SPTGs") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 40; ++i) {
    Game g = random_sptg(rng);
    INFO("game " << i << ": " << describe(g));
    RegionProperties p = check_region_properties(g);
    std::string why;
    for (const auto& f : p.failures) why += f + "\n";
    INFO(why);
    CHECK(p.bellman);
    CHECK(p.matches_sptg_solver);
  }
}
