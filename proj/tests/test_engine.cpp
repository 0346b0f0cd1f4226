#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "rdmlab/engine.hpp"
#include "rdmlab/fixtures.hpp"

using namespace rdmlab;

TEST_CASE("worked example distributions") {
  const WinDistribution cycle = win_distribution(fixtures::three_cycle());
  CHECK(cycle.probs == std::vector<Prob>{make_prob(1, 3), make_prob(1, 3), make_prob(1, 3)});

  const WinDistribution four = win_distribution(fixtures::four_team());
  CHECK(four.probs == std::vector<Prob>{make_prob(1, 2), make_prob(5, 18), make_prob(1, 18), make_prob(1, 6)});

  CHECK(win_distribution(parse_tournament("1\n0")).probs == std::vector<Prob>{Prob(1)});
  CHECK(win_distribution(parse_tournament("2\n00\n10")).probs == std::vector<Prob>{Prob(0), Prob(1)});
}

TEST_CASE("coalition probability of the lower-bound tournament") {
  const Tournament t = fixtures::lower_bound_five();
  CHECK(coalition_win_prob(t, TeamSet::of({0, 1, 2})) == make_prob(29, 60));
  CHECK(coalition_win_prob(t, TeamSet()) == 0);
  CHECK(coalition_win_prob(t, t.teams()) == 1);
  CHECK(coalition_win_prob(fixtures::lower_bound_five_manipulated(), TeamSet::of({0, 1, 2})) == 1);
}

TEST_CASE("agrees with full match-order enumeration") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    const Tournament t = oracle::random_tournament(n, rng);
    CAPTURE(to_trn(t));
    CHECK(win_distribution(t).probs == oracle::brute_force_distribution(t));
  }
}

TEST_CASE("agrees with the backward first-step recursion") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 9;
    const Tournament t = oracle::random_tournament(n, rng);
    CAPTURE(to_trn(t));
    CHECK(win_distribution(t).probs == oracle::first_step_distribution(t));
  }
}

TEST_CASE("distributions sum to one and respect Condorcet winners") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 12;
    Tournament t = oracle::random_tournament(n, rng);
    const WinDistribution d = win_distribution(t);
    Prob sum = 0;
    for (const Prob& p : d.probs) {
      CHECK(p >= 0);
      sum += p;
    }
    CHECK(sum == 1);
    // Make team 0 beat everyone.
    for (int j = 1; j < n; ++j) t = t.with_result(0, j);
    CHECK(win_distribution(t)[0] == 1);
  }
}

TEST_CASE("teams that lose every match never win and change nothing") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 8;
    const Tournament t = oracle::random_tournament(n, rng);
    const WinDistribution before = win_distribution(t);
    const WinDistribution after = win_distribution(t.with_appended_team(TeamSet()));
    CHECK(after[n] == 0);
    for (int v = 0; v < n; ++v) CHECK(after[v] == before[v]);
  }
}

TEST_CASE("winning an extra match never hurts") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 7;
    const Tournament t = oracle::random_tournament(n, rng);
    for (int u = 0; u < n; ++u) {
      for (int v : t.beaters_of(u).members()) {
        CHECK(win_distribution(t.with_result(u, v))[u] >= win_distribution(t)[u]);
      }
    }
  }
}

TEST_CASE("size caps") {
  CHECK_THROWS_AS(win_distribution(Tournament::transitive(21)), CapExceeded);
  const WinDistribution big = win_distribution(Tournament::transitive(kMaxDpTeams));
  CHECK(big[0] == 1);
  // Near-regular 20 teams: every alive set is reachable, so the widest counts.
  std::vector<std::vector<int>> rows(20, std::vector<int>(20, 0));
  for (int i = 0; i < 20; ++i) {
    for (int s = 1; s <= 9; ++s) rows[i][(i + s) % 20] = 1;
    if (i < 10) rows[i][i + 10] = 1;
  }
  const Tournament nearly_regular = Tournament::from_matrix(rows);
  const WinDistribution d = win_distribution(nearly_regular);
  Prob sum = 0;
  for (const Prob& p : d.probs) sum += p;
  CHECK(sum == 1);
}

TEST_CASE("monte carlo estimate is reproducible and close") {
  const Tournament t = fixtures::lower_bound_five();
  const auto a = win_distribution_montecarlo(t, 200000, 42);
  const auto b = win_distribution_montecarlo(t, 200000, 42);
  CHECK(a.freq == b.freq);
  CHECK(a.samples == 200000);
  const WinDistribution exact = win_distribution(t);
  for (int i = 0; i < t.size(); ++i) {
    const double p = exact[i].get_d();
    const double sigma = std::sqrt(p * (1 - p) / 200000.0);
    CHECK(std::abs(a.freq[static_cast<std::size_t>(i)] - p) <= 5 * sigma + 1e-9);
  }
  CHECK(win_distribution_montecarlo(Tournament::transitive(30), 100, 1).freq[0] == 1.0);
}
