#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <random>

#include "oracle.hpp"
#include "rdmlab/decomposition.hpp"
#include "rdmlab/engine.hpp"
#include "rdmlab/fixtures.hpp"
#include "rdmlab/manipulation.hpp"

using namespace rdmlab;

namespace {

SearchOptions single_threaded() {
  SearchOptions o;
  o.threads = 1;
  return o;
}

}  // namespace

TEST_CASE("lower-bound tournament gains 31/60") {
  const Tournament t = fixtures::lower_bound_five();
  const ManipulationResult r = manipulation_gain(t, TeamSet::of({0, 1, 2}));
  CHECK(r.base_prob == make_prob(29, 60));
  CHECK(r.best_prob == 1);
  CHECK(r.gain == make_prob(31, 60));
  bool found = false;
  for (const Tournament& w : r.witnesses) {
    CHECK(is_s_adjacent(t, w, TeamSet::of({0, 1, 2})));
    CHECK(coalition_win_prob(w, TeamSet::of({0, 1, 2})) == 1);
    found = found || w == fixtures::lower_bound_five_manipulated();
  }
  CHECK(found);
}

TEST_CASE("small manipulation examples") {
  const Tournament cycle = fixtures::three_cycle();
  CHECK(manipulation_gain(cycle, TeamSet::of({1, 2})).gain == make_prob(1, 3));
  CHECK(manipulation_gain(cycle, TeamSet::of({0})).gain == 0);
  CHECK(manipulation_gain(cycle, cycle.teams()).gain == 0);
  CHECK(manipulation_gain(fixtures::lower_bound_five(), fixtures::lower_bound_five().teams()).gain == 0);
  CHECK_THROWS_AS(manipulation_gain(cycle, TeamSet()), std::invalid_argument);
  CHECK_THROWS_AS(manipulation_gain(Tournament::transitive(8), TeamSet::all(7)), CapExceeded);
}

TEST_CASE("gains agree with the rewiring oracle") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 4;
    const int k = 1 + trial % std::min(n, 4);
    const Tournament t = oracle::random_tournament(n, rng);
    std::vector<int> members;
    for (int i = 0; i < k; ++i) members.push_back((trial + 2 * i) % n);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    CAPTURE(to_trn(t));
    CHECK(manipulation_gain(t, TeamSet::of(members)).gain == oracle::manipulation_gain(t, members));
  }
}

TEST_CASE("worst cases agree with brute force over labeled tournaments") {
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{3, 2}, {3, 3}, {4, 2}, {4, 3}, {5, 2}}) {
    CAPTURE(n);
    CAPTURE(k);
    CHECK(worst_case(n, k).alpha == oracle::worst_case(n, k));
  }
}

TEST_CASE("pinned worst-case values") {
  CHECK(worst_case(3, 2).alpha == make_prob(1, 3));
  CHECK(worst_case(4, 2).alpha == make_prob(1, 3));
  CHECK(worst_case(5, 2).alpha == make_prob(1, 3));
  CHECK(worst_case(3, 3).alpha == 0);
  CHECK(worst_case(4, 3).alpha == make_prob(1, 2));
  CHECK(worst_case(5, 3).alpha == make_prob(31, 60));
  for (int n = 3; n <= 6; ++n) CHECK(worst_case(n, n).alpha == 0);
}

TEST_CASE("the reported witness is re-verifiable") {
  const WorstCaseResult r = worst_case(5, 3);
  CHECK(r.coalition.size() == 3);
  CHECK(is_s_adjacent(r.witness, r.manipulated, r.coalition));
  CHECK(coalition_win_prob(r.witness, r.coalition) == r.base_prob);
  CHECK(coalition_win_prob(r.manipulated, r.coalition) - r.base_prob == r.alpha);
  CHECK(r.tournaments_examined == 12);
  CHECK(r.instances_examined == 120);
}

TEST_CASE("isomorphism reduction does not change the answer") {
  SearchOptions full;
  full.isomorphism_reduction = false;
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{4, 2}, {4, 3}, {5, 3}, {5, 4}}) {
    const WorstCaseResult reduced = worst_case(n, k);
    const WorstCaseResult labeled = worst_case(n, k, full);
    CHECK(reduced.alpha == labeled.alpha);
    CHECK(labeled.tournaments_examined == (std::size_t{1} << (n * (n - 1) / 2)));
  }
}

TEST_CASE("sweeps are identical for any thread count") {
  SearchOptions three;
  three.threads = 3;
  const SearchSweep a = search_sweep(5, 3, single_threaded());
  const SearchSweep b = search_sweep(5, 3, three);
  REQUIRE(a.instances.size() == b.instances.size());
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    CHECK(a.instances[i].tournament_index == b.instances[i].tournament_index);
    CHECK(a.instances[i].coalition == b.instances[i].coalition);
    CHECK(a.instances[i].result.gain == b.instances[i].result.gain);
  }
  const WorstCaseResult wa = reduce_worst_case(a);
  const WorstCaseResult wb = reduce_worst_case(b);
  CHECK(wa.witness == wb.witness);
  CHECK(wa.manipulated == wb.manipulated);
  CHECK(wa.coalition == wb.coalition);
}

TEST_CASE("search caps") {
  CHECK_THROWS_AS(worst_case(7, 3), CapExceeded);
  SearchOptions large;
  large.allow_large = true;
  CHECK_THROWS_AS(worst_case(8, 3, large), CapExceeded);
  SearchOptions full;
  full.isomorphism_reduction = false;
  full.allow_large = true;
  CHECK_THROWS_AS(worst_case(7, 3, full), CapExceeded);
  CHECK_THROWS_AS(worst_case(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(worst_case(4, 5), std::invalid_argument);
}

TEST_CASE("thread count resolution") {
  CHECK(resolve_threads(4) == 4);
  setenv("RDMLAB_THREADS", "3", 1);
  CHECK(resolve_threads(0) == 3);
  unsetenv("RDMLAB_THREADS");
  CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("three-team coalitions up to seven teams") {
  SearchOptions large;
  large.allow_large = true;
  const MonotonicityReport mono = alpha_monotonicity_check(3, 7, large);
  CHECK(mono.non_decreasing);
  REQUIRE(mono.alphas.size() == 5);
  for (const auto& [n, a] : mono.alphas) {
    CAPTURE(n);
    CHECK(a <= make_prob(31, 60));
  }
  CHECK(mono.alphas.back().second == make_prob(31, 60));

  for (int n = 6; n <= 7; ++n) {
    const SearchSweep sweep = search_sweep(n, 3, large);
    for (const SearchInstance& inst : sweep.instances) {
      const CoalitionProfile p = coalition_profile(sweep.tournaments[inst.tournament_index], inst.coalition);
      if (p.i_size >= 5) CHECK(inst.result.gain <= make_prob(1, 2));
      CHECK(inst.result.gain <= make_prob(31, 60));
    }
  }
}

TEST_CASE("pair coalitions never gain more than 1/3") {
  CHECK(alpha_monotonicity_check(2, 6).alphas.back().second == make_prob(1, 3));
}
