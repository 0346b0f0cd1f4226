#include "rdmlab/report.hpp"

namespace rdmlab::report {

json tournament(const Tournament& t) { return json::parse(to_json_text(t)); }

json team_list(const Tournament& t, TeamSet s) {
  json out = json::array();
  for (int i : s.members()) out.push_back(t.name(i));
  return out;
}

json profile(const CoalitionProfile& p) {
  return json{{"a1", p.a1}, {"a2", p.a2}, {"a3", p.a3}, {"i_size", p.i_size}};
}

json manipulation(const Tournament& t, TeamSet s, const ManipulationResult& r) {
  json witnesses = json::array();
  for (const Tournament& w : r.witnesses) witnesses.push_back(tournament(w));
  return json{{"coalition", team_list(t, s)},
              {"base", to_fraction(r.base_prob)},
              {"base_decimal", to_decimal(r.base_prob)},
              {"best", to_fraction(r.best_prob)},
              {"best_decimal", to_decimal(r.best_prob)},
              {"gain", to_fraction(r.gain)},
              {"gain_decimal", to_decimal(r.gain)},
              {"witnesses", std::move(witnesses)}};
}

json worst_case(const WorstCaseResult& r) {
  return json{{"n", r.n},
              {"k", r.k},
              {"alpha", to_fraction(r.alpha)},
              {"alpha_decimal", to_decimal(r.alpha)},
              {"base", to_fraction(r.base_prob)},
              {"coalition", team_list(r.witness, r.coalition)},
              {"witness", tournament(r.witness)},
              {"manipulated", tournament(r.manipulated)},
              {"tournaments_examined", r.tournaments_examined},
              {"instances_examined", r.instances_examined}};
}

json table1(const Table1Report& r) {
  json rows = json::array();
  for (const Table1Row& row : r.rows) {
    json empirical = json::object();
    json witness = nullptr;
    Prob best = -1;
    for (const auto& [n, e] : row.empirical) {
      empirical[std::to_string(n)] = to_fraction(e.gain);
      if (e.gain > best) {
        best = e.gain;
        witness = json{{"n", n},
                       {"tournament", tournament(e.witness)},
                       {"coalition", team_list(e.witness, e.coalition)},
                       {"manipulated", tournament(e.manipulated)}};
      }
    }
    rows.push_back(json{{"profile", profile(row.profile)},
                        {"f", to_fraction(row.f)},
                        {"delta_value", to_fraction(row.delta_value)},
                        {"delta_n_independent", row.delta_n_independent},
                        {"closure", to_string(row.closure)},
                        {"empirical_max", best < 0 ? json(nullptr) : json(to_fraction(best))},
                        {"empirical_by_n", std::move(empirical)},
                        {"witness", std::move(witness)},
                        {"reproduced", row.reproduced},
                        {"empirical_within", row.empirical_within}});
  }
  return rows;
}

json sybil_scan(const SybilScan& scan) {
  json rows = json::array();
  for (const SybilScanEntry& e : scan.entries) {
    rows.push_back(json{{"m", e.m},
                        {"h", to_fraction(e.h)},
                        {"g", to_fraction(e.g)},
                        {"p", to_fraction(e.p)},
                        {"h_decimal", to_decimal(e.h)},
                        {"g_decimal", to_decimal(e.g)},
                        {"p_decimal", to_decimal(e.p)},
                        {"full_dp_checked", e.full_dp_checked}});
  }
  return rows;
}

json invariance(const InvarianceReport& r) {
  return json{{"m", r.m},
              {"configs", r.configs},
              {"non_sybil_identical", r.non_sybil_identical},
              {"matches_q", r.matches_q},
              {"sybil_total_identical", r.sybil_total_identical},
              {"coalition_gain_zero", r.coalition_gain_zero},
              {"sybil_total", to_fraction(r.sybil_total)},
              {"ok", r.ok()}};
}

json counterexample(const StrongMonotonicityWitness& w) {
  json flipped = json::array();
  for (const MatchId& e : w.flipped) {
    flipped.push_back(json{{"winner_before", w.t_prime.name(e.winner)},
                           {"loser_before", w.t_prime.name(e.loser)}});
  }
  return json{{"m", w.m},
              {"coalition", team_list(w.t_prime, w.coalition)},
              {"r_c_t_prime", to_fraction(w.r_c_prime)},
              {"r_c_t_double_prime", to_fraction(w.r_c_double_prime)},
              {"flipped", std::move(flipped)},
              {"peel_preserves_base", w.peel_preserves_base},
              {"t_prime", tournament(w.t_prime)},
              {"t_double_prime", tournament(w.t_double_prime)}};
}

}  // namespace rdmlab::report
