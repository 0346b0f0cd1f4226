#include "rdmlab/decomposition.hpp"

#include <algorithm>
#include <stdexcept>

#include "rdmlab/engine.hpp"

namespace rdmlab {

namespace {

void require_triple(TeamSet s, const Tournament& t) {
  if (s.size() != 3 || !s.subset_of(t.teams())) {
    throw std::invalid_argument("coalition must be exactly 3 teams of the tournament");
  }
}

// S \ x re-indexed for T \ x.
TeamSet shift_after_removal(TeamSet s, int x) {
  const std::uint64_t m = s.without(x).mask();
  const std::uint64_t low = m & ((std::uint64_t{1} << x) - 1);
  const std::uint64_t high = (m >> (x + 1)) << x;
  return TeamSet(low | high);
}

Prob coalition_without(const Tournament& t, TeamSet s, int x) {
  return coalition_win_prob(t.without_team(x), shift_after_removal(s, x));
}

// Number of coalition members outside team `o` beats.
int beaten_members(const Tournament& t, TeamSet s, int o) { return (t.beaten_by(o) & s).size(); }

}  // namespace

CoalitionProfile coalition_profile(const Tournament& t, TeamSet s) {
  require_triple(s, t);
  CoalitionProfile p;
  for (int o : (t.teams() - s).members()) {
    switch (beaten_members(t, s, o)) {
      case 1: ++p.a1; break;
      case 2: ++p.a2; break;
      case 3: ++p.a3; break;
      default: break;
    }
  }
  p.i_size = p.a1 + 2 * p.a2 + 3 * p.a3;
  return p;
}

MatchSets match_sets(const Tournament& t, TeamSet s) {
  require_triple(s, t);
  MatchSets out;
  const TeamSet outside = t.teams() - s;
  for (int x : s.members()) {
    for (int o : (t.beaters_of(x) & outside).members()) out.I.push_back({o, x});
  }
  std::sort(out.I.begin(), out.I.end());
  out.G = out.I;
  for (int x : s.members()) {
    for (int y : (t.beaten_by(x) & s).members()) out.G.push_back({x, y});
  }
  std::sort(out.G.begin(), out.G.end());

  std::vector<int> level(static_cast<std::size_t>(t.size()), 0);
  for (int o : outside.members()) level[o] = beaten_members(t, s, o);
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) {
      if (!t.beats(i, j)) continue;
      const bool same_level = outside.contains(i) && outside.contains(j) && level[i] >= 1 &&
                              level[i] == level[j];
      const bool level_team_loses_to_s = s.contains(i) && outside.contains(j) && level[j] >= 1;
      if (same_level || level_team_loses_to_s) out.Q.push_back({i, j});
    }
  }
  std::sort(out.Q.begin(), out.Q.end());
  return out;
}

long long q_size_closed_form(const CoalitionProfile& p) {
  return 2LL * p.a1 + p.a2 + pairs(p.a1) + pairs(p.a2) + pairs(p.a3);
}

Prob ABCTerms::combined() const {
  return (A + B + C) / Prob(static_cast<long>(pairs(n)));
}

ABCTerms abc_decompose(const Tournament& t, const Tournament& t_prime, TeamSet s) {
  require_triple(s, t);
  if (!is_s_adjacent(t, t_prime, s)) throw std::invalid_argument("tournaments are not S-adjacent");
  ABCTerms out;
  out.n = t.size();
  const std::vector<int> members = s.members();
  const TeamSet outside = t.teams() - s;
  out.A = 0;
  out.B = 0;
  out.C = 0;
  for (std::size_t idx = 0; idx < 3; ++idx) {
    const int x = members[idx];
    out.members[idx] = x;
    out.ell[idx] = t.losses_within(x, s);
    out.ell_prime[idx] = t_prime.losses_within(x, s);
    out.d_star[idx] = t.losses_within(x, outside);
    const Prob before = coalition_without(t, s, x);
    const Prob after = coalition_without(t_prime, s, x);
    out.A += Prob(out.ell_prime[idx]) * after - Prob(out.ell[idx]) * before;
    out.B += Prob(out.d_star[idx]) * (after - before);
  }
  // C sums over matches whose loser is outside S; the match and its loser
  // are the same in T and T'.
  for (int i = 0; i < t.size(); ++i) {
    for (int j = i + 1; j < t.size(); ++j) {
      const int loser = t.beats(i, j) ? j : i;
      if (s.contains(loser)) continue;
      out.C += coalition_without(t_prime, s, loser) - coalition_without(t, s, loser);
    }
  }
  return out;
}

TermBoundReport check_lemma_bounds(const ABCTerms& terms, int i_size) {
  TermBoundReport r;
  if (i_size <= 1) {
    r.a_bound = 1;
    r.b_bound = 0;
  } else {
    r.a_bound = make_prob(7, 3);
    r.b_bound = make_prob(i_size, 3);
  }
  r.a_slack = r.a_bound - terms.A;
  r.b_slack = r.b_bound - terms.B;
  r.a_holds = terms.A <= r.a_bound;
  // The |I| <= 1 strengthening for B is an equality.
  r.b_holds = i_size <= 1 ? terms.B == 0 : terms.B <= r.b_bound;
  return r;
}

const Prob& FTable::at(const ProfileKey& k) const {
  auto it = rows.find(k);
  if (it == rows.end()) {
    throw std::invalid_argument("profile (" + std::to_string(k[0]) + "," + std::to_string(k[1]) +
                                "," + std::to_string(k[2]) + ") is not a row of the bound table");
  }
  return it->second;
}

const FTable& table1() {
  static const FTable table = [] {
    FTable f;
    f.rows[{0, 0, 0}] = 0;
    f.rows[{1, 0, 0}] = make_prob(1, 6);
    f.rows[{2, 0, 0}] = make_prob(23, 60);
    f.rows[{3, 0, 0}] = make_prob(407, 900);
    f.rows[{4, 0, 0}] = make_prob(4499, 9450);
    f.rows[{0, 1, 0}] = make_prob(1, 2);
    f.rows[{0, 2, 0}] = make_prob(31, 60);
    f.rows[{1, 1, 0}] = make_prob(1, 2);
    f.rows[{2, 1, 0}] = make_prob(131, 260);
    f.rows[{0, 0, 1}] = 0;
    f.rows[{1, 0, 1}] = make_prob(11, 27);
    return f;
  }();
  return table;
}

Prob delta_recurrence(const CoalitionProfile& profile, const FTable& f, int n) {
  const ProfileKey key = profile.key();
  const Prob& self = f.at(key);
  const int outside = profile.a1 + profile.a2 + profile.a3;
  const long long total = pairs(n);
  const long long g_union_q =
      3LL * (1 + outside) + pairs(profile.a1) + pairs(profile.a2) + pairs(profile.a3);
  if (n < 3 + outside || total < g_union_q) {
    throw std::invalid_argument("n = " + std::to_string(n) + " too small for this profile");
  }
  const int i_size = profile.a1 + 2 * profile.a2 + 3 * profile.a3;
  Prob sum = i_size <= 1 ? Prob(1) : make_prob(7, 3) + make_prob(i_size, 3);

  auto lower = [&](long long coefficient, ProfileKey k) {
    if (coefficient != 0) sum += Prob(static_cast<long>(coefficient)) * f.at(k);
  };
  lower(2LL * profile.a1 + pairs(profile.a1), {profile.a1 - 1, profile.a2, profile.a3});
  lower(profile.a2 + pairs(profile.a2), {profile.a1, profile.a2 - 1, profile.a3});
  lower(pairs(profile.a3), {profile.a1, profile.a2, profile.a3 - 1});
  sum += Prob(static_cast<long>(total - g_union_q)) * self;
  return sum / Prob(static_cast<long>(total));
}

std::string to_string(RowClosure c) {
  switch (c) {
    case RowClosure::DeltaFixedPoint: return "delta-fixed-point";
    case RowClosure::DominantCoalition: return "dominant-coalition";
    case RowClosure::ClonedCoalition: return "cloned-coalition";
  }
  return "unknown";
}

std::map<ProfileKey, EmpiricalMax> empirical_profile_maxima(const SearchSweep& sweep) {
  if (sweep.k != 3) throw std::invalid_argument("profile maxima need a k = 3 sweep");
  std::map<ProfileKey, EmpiricalMax> out;
  for (const SearchInstance& inst : sweep.instances) {
    const Tournament& t = sweep.tournaments[inst.tournament_index];
    const ProfileKey key = coalition_profile(t, inst.coalition).key();
    auto [it, inserted] = out.try_emplace(key);
    EmpiricalMax& cur = it->second;
    ++cur.instances;
    if (inserted || inst.result.gain > cur.gain) {
      cur.gain = inst.result.gain;
      cur.witness = t;
      cur.coalition = inst.coalition;
      cur.manipulated = inst.result.witnesses.front();
    }
  }
  return out;
}

bool Table1Report::ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const Table1Row& r) { return r.reproduced && r.empirical_within; });
}

std::size_t Table1Report::reproduced_by_delta() const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const Table1Row& r) {
    return r.closure == RowClosure::DeltaFixedPoint && r.reproduced;
  }));
}

Table1Report verify_table1(int n_max, const SearchOptions& options) {
  Table1Report report;
  report.n_max = n_max;
  const FTable& f = table1();

  std::map<int, std::map<ProfileKey, EmpiricalMax>> empirical;
  for (int n = 4; n <= n_max; ++n) empirical[n] = empirical_profile_maxima(search_sweep(n, 3, options));

  for (const auto& [key, value] : f.rows) {
    Table1Row row;
    row.profile = CoalitionProfile{key[0], key[1], key[2], key[0] + 2 * key[1] + 3 * key[2]};
    row.f = value;
    if (key == ProfileKey{0, 0, 0}) row.closure = RowClosure::DominantCoalition;
    if (key == ProfileKey{0, 0, 1}) row.closure = RowClosure::ClonedCoalition;

    int n_min = 3 + key[0] + key[1] + key[2];
    while (pairs(n_min) < 3LL * (1 + key[0] + key[1] + key[2]) + pairs(key[0]) + pairs(key[1]) +
                              pairs(key[2])) {
      ++n_min;
    }
    row.delta_value = delta_recurrence(row.profile, f, n_min);
    row.delta_n_independent = true;
    for (int n = n_min + 1; n <= 40; ++n) {
      if (delta_recurrence(row.profile, f, n) != row.delta_value) row.delta_n_independent = false;
    }

    bool empirical_ok = true;
    bool closure_evidence = true;
    for (const auto& [n, maxima] : empirical) {
      auto it = maxima.find(key);
      if (it == maxima.end()) continue;
      row.empirical.emplace(n, it->second);
      if (it->second.gain > value) empirical_ok = false;
      if (it->second.gain != 0) closure_evidence = false;
    }
    row.empirical_within = empirical_ok;
    if (row.closure == RowClosure::DeltaFixedPoint) {
      row.reproduced = row.delta_n_independent && row.delta_value == value;
    } else {
      // Both direct rows claim M_n = 0 exactly; the exhaustive sweeps must
      // show it.
      row.reproduced = value == 0 && closure_evidence && !row.empirical.empty();
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

Prob lemma46_bound(int i_size) {
  if (i_size < 0) throw std::invalid_argument("|I| must be non-negative");
  return make_prob(i_size + 7, 3LL * (i_size + 3));
}

CBoundCheck check_c_bound(const Tournament& t, const Tournament& t_prime, TeamSet s,
                          const std::map<ProfileKey, EmpiricalMax>& m_prev) {
  const CoalitionProfile profile = coalition_profile(t, s);
  const MatchSets sets = match_sets(t, s);
  CBoundCheck out;
  out.q_matches = sets.Q.size();
  out.c_value = 0;
  out.c_bound = 0;

  for (int i = 0; i < t.size(); ++i) {
    for (int j = i + 1; j < t.size(); ++j) {
      const MatchId e = t.beats(i, j) ? MatchId{i, j} : MatchId{j, i};
      if (s.contains(e.loser)) continue;
      const Prob diff = coalition_without(t_prime, s, e.loser) - coalition_without(t, s, e.loser);
      out.c_value += diff;
      const bool in_q = std::binary_search(sets.Q.begin(), sets.Q.end(), e);
      if (!in_q) {
        out.c_bound += diff;
        continue;
      }
      ProfileKey expected = profile.key();
      const int lvl = beaten_members(t, s, e.loser);
      --expected[static_cast<std::size_t>(lvl - 1)];
      const Tournament reduced = t.without_team(e.loser);
      const CoalitionProfile got = coalition_profile(reduced, shift_after_removal(s, e.loser));
      if (got.key() != expected) out.profiles_match = false;
      auto it = m_prev.find(expected);
      if (it == m_prev.end()) {
        out.per_match_within = false;
        continue;
      }
      out.c_bound += it->second.gain;
      if (diff > it->second.gain) out.per_match_within = false;
    }
  }
  return out;
}

}  // namespace rdmlab
