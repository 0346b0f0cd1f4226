#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "oracle.hpp"
#include "rdmlab/decomposition.hpp"
#include "rdmlab/fixtures.hpp"

using namespace rdmlab;

namespace {

std::mt19937_64& rng() {
  static std::mt19937_64 r(31);
  return r;
}

struct Instance {
  Tournament t;
  Tournament tp;
  TeamSet s;
};

// Random S-adjacent pair with S = {0, 1, 2} moved to random positions.
Instance random_instance(int n) {
  Tournament t = oracle::random_tournament(n, rng());
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::shuffle(perm.begin(), perm.end(), rng());
  std::uniform_int_distribution<int> bias(0, 3);
  // Sometimes make S dominant so small |I| shows up.
  if (bias(rng()) == 0) {
    for (int x = 0; x < 3; ++x) {
      for (int y = 3; y < n; ++y) t = t.with_result(x, y);
    }
    if (n > 3 && bias(rng()) < 2) t = t.with_result(3, bias(rng()) % 3);
  }
  const std::vector<Tournament> adj = enumerate_s_adjacent(t, TeamSet::of({0, 1, 2}));
  const Tournament tp = adj[static_cast<std::size_t>(std::uniform_int_distribution<int>(0, 7)(rng()))];
  return {t.permuted(perm), tp.permuted(perm), TeamSet::of({perm[0], perm[1], perm[2]})};
}

}  // namespace

TEST_CASE("profile and match sets of the lower-bound tournament") {
  const Tournament t = fixtures::lower_bound_five();
  const TeamSet s = TeamSet::of({0, 1, 2});
  const CoalitionProfile p = coalition_profile(t, s);
  CHECK(p.key() == ProfileKey{0, 2, 0});
  CHECK(p.i_size == 4);
  const MatchSets m = match_sets(t, s);
  CHECK(m.I.size() == 4);
  CHECK(m.G.size() == 7);
  CHECK(m.Q.size() == 3);  // a-b, w-a, w-b
  CHECK(static_cast<long long>(m.Q.size()) == q_size_closed_form(p));
  CHECK_THROWS_AS(coalition_profile(t, TeamSet::of({0, 1})), std::invalid_argument);
}

TEST_CASE("match set sizes follow the profile") {
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 5;
    const Instance inst = random_instance(n);
    const CoalitionProfile p = coalition_profile(inst.t, inst.s);
    const MatchSets m = match_sets(inst.t, inst.s);
    CHECK(p.a1 + 2 * p.a2 + 3 * p.a3 == p.i_size);
    CHECK(p.a1 + p.a2 + p.a3 <= n - 3);
    CHECK(static_cast<int>(m.I.size()) == p.i_size);
    CHECK(m.G.size() == m.I.size() + 3);
    CHECK(static_cast<long long>(m.Q.size()) == q_size_closed_form(p));
    // G and Q are disjoint, so the union size is additive.
    std::vector<MatchId> both;
    std::set_intersection(m.G.begin(), m.G.end(), m.Q.begin(), m.Q.end(), std::back_inserter(both));
    CHECK(both.empty());
    CHECK(static_cast<long long>(m.G.size() + m.Q.size()) ==
          3LL * (1 + p.a1 + p.a2 + p.a3) + pairs(p.a1) + pairs(p.a2) + pairs(p.a3));
  }
}

TEST_CASE("first-step decomposition matches the oracle difference") {
  int small_i = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 5;
    const Instance inst = random_instance(n);
    const ABCTerms terms = abc_decompose(inst.t, inst.tp, inst.s);
    const std::vector<int> members = inst.s.members();
    const Prob diff = oracle::sum_over(oracle::first_step_distribution(inst.tp), members) -
                      oracle::sum_over(oracle::first_step_distribution(inst.t), members);
    CHECK(terms.combined() == diff);
    CHECK(terms.ell[0] + terms.ell[1] + terms.ell[2] == 3);
    CHECK(terms.ell_prime[0] + terms.ell_prime[1] + terms.ell_prime[2] == 3);
    const CoalitionProfile p = coalition_profile(inst.t, inst.s);
    CHECK(terms.d_star[0] + terms.d_star[1] + terms.d_star[2] == p.i_size);
    const TermBoundReport bounds = check_lemma_bounds(terms, p.i_size);
    CHECK(bounds.holds());
    CHECK(bounds.a_slack >= 0);
    CHECK(bounds.b_slack >= 0);
    if (p.i_size <= 1) {
      ++small_i;
      CHECK(terms.B == 0);
      CHECK(terms.A <= 1);
    }
  }
  CHECK(small_i > 20);
}

TEST_CASE("decomposition rejects bad input") {
  const Tournament t = fixtures::lower_bound_five();
  CHECK_THROWS_AS(abc_decompose(t, t.with_result(3, 0).with_result(0, 3), TeamSet::of({0, 1})),
                  std::invalid_argument);
  CHECK_THROWS_AS(abc_decompose(t, t.with_result(4, 2), TeamSet::of({0, 1, 2})), std::invalid_argument);
}

TEST_CASE("bound table values") {
  const FTable& f = table1();
  CHECK(f.rows.size() == 11);
  CHECK(f.at({0, 0, 0}) == 0);
  CHECK(f.at({1, 0, 0}) == make_prob(1, 6));
  CHECK(f.at({2, 0, 0}) == make_prob(23, 60));
  CHECK(f.at({3, 0, 0}) == make_prob(407, 900));
  CHECK(f.at({4, 0, 0}) == make_prob(4499, 9450));
  CHECK(f.at({0, 1, 0}) == make_prob(1, 2));
  CHECK(f.at({0, 2, 0}) == make_prob(31, 60));
  CHECK(f.at({1, 1, 0}) == make_prob(1, 2));
  CHECK(f.at({2, 1, 0}) == make_prob(131, 260));
  CHECK(f.at({0, 0, 1}) == 0);
  CHECK(f.at({1, 0, 1}) == make_prob(11, 27));
  CHECK_FALSE(f.contains({0, 3, 0}));
  CHECK_THROWS(f.at({0, 3, 0}));

  Prob best = 0;
  for (const auto& [k, v] : f.rows) {
    best = std::max(best, v);
    for (const auto& [k2, v2] : f.rows) {
      if (k2[0] <= k[0] && k2[1] <= k[1] && k2[2] <= k[2]) CHECK(v2 <= v);
    }
  }
  CHECK(best == make_prob(31, 60));
}

TEST_CASE("recurrence fixed points") {
  const FTable& f = table1();
  auto profile = [](int a1, int a2, int a3) {
    return CoalitionProfile{a1, a2, a3, a1 + 2 * a2 + 3 * a3};
  };
  for (int n = 5; n <= 30; ++n) {
    CHECK(delta_recurrence(profile(0, 2, 0), f, n) == make_prob(31, 60));
    CHECK(delta_recurrence(profile(1, 0, 0), f, n) == make_prob(1, 6));
  }
  for (int n = 7; n <= 30; ++n) CHECK(delta_recurrence(profile(4, 0, 0), f, n) == make_prob(4499, 9450));
  // The two rows closed without the recurrence do not sit at a fixed point.
  CHECK(delta_recurrence(profile(0, 0, 0), f, 5) == make_prob(1, 10));
  CHECK(delta_recurrence(profile(0, 0, 1), f, 5) == make_prob(1, 3));
  CHECK_THROWS_AS(delta_recurrence(profile(4, 0, 0), f, 6), std::invalid_argument);
  CHECK_THROWS_AS(delta_recurrence(profile(0, 3, 0), f, 10), std::invalid_argument);
}

TEST_CASE("table verification up to six teams") {
  const Table1Report rep = verify_table1(6);
  CHECK(rep.ok());
  CHECK(rep.reproduced_by_delta() == 9);
  for (const Table1Row& row : rep.rows) {
    CAPTURE(row.profile.key());
    CHECK(row.reproduced);
    CHECK(row.empirical_within);
    if (row.closure == RowClosure::DeltaFixedPoint) {
      CHECK(row.delta_value == row.f);
      CHECK(row.delta_n_independent);
    } else {
      CHECK(row.f == 0);
      for (const auto& [n, e] : row.empirical) CHECK(e.gain == 0);
    }
  }
  const auto it = std::find_if(rep.rows.begin(), rep.rows.end(),
                               [](const Table1Row& r) { return r.profile.key() == ProfileKey{0, 2, 0}; });
  REQUIRE(it != rep.rows.end());
  REQUIRE(it->empirical.count(5) == 1);
  CHECK(it->empirical.at(5).gain == make_prob(31, 60));
}

TEST_CASE("large-|I| bound") {
  CHECK(lemma46_bound(5) == make_prob(1, 2));
  CHECK(lemma46_bound(0) == make_prob(7, 9));
  for (int i = 5; i < 200; ++i) CHECK(lemma46_bound(i + 1) < lemma46_bound(i));
}

TEST_CASE("C-term bound against empirical maxima one size down") {
  const std::map<ProfileKey, EmpiricalMax> m5 = empirical_profile_maxima(search_sweep(5, 3));
  const SearchSweep six = search_sweep(6, 3);
  std::size_t checked = 0;
  for (const SearchInstance& inst : six.instances) {
    const Tournament& t = six.tournaments[inst.tournament_index];
    const CoalitionProfile p = coalition_profile(t, inst.coalition);
    if (!table1().contains(p.key())) continue;
    for (const Tournament& tp : enumerate_s_adjacent(t, inst.coalition)) {
      const CBoundCheck c = check_c_bound(t, tp, inst.coalition, m5);
      CHECK(c.profiles_match);
      CHECK(c.holds());
      ++checked;
    }
  }
  CHECK(checked > 100);
}
