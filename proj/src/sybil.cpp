#include "rdmlab/sybil.hpp"

#include <stdexcept>

#include "rdmlab/engine.hpp"
#include "rdmlab/fixtures.hpp"
#include "rdmlab/manipulation.hpp"

namespace rdmlab {

namespace {

constexpr int kMaxRecursionBase = 16;

// Index of base team x inside base.restricted(alive).
int restricted_index(std::uint32_t alive, int x) {
  return std::popcount(alive & ((std::uint32_t{1} << x) - 1));
}

}  // namespace

Tournament build_sybil(const SybilAttack& attack) {
  const Tournament& base = attack.base;
  const int n = base.size();
  if (attack.u1 < 0 || attack.u1 >= n) throw std::invalid_argument("u1 is not a team of the base");
  if (attack.m < 1) throw std::invalid_argument("Sybil count must be >= 1");
  if (attack.intra.size() != attack.m) {
    throw std::invalid_argument("intra-Sybil matrix must have m = " + std::to_string(attack.m) +
                                " teams, got " + std::to_string(attack.intra.size()));
  }
  const int total = n + attack.m - 1;
  if (total > kMaxTeams) throw CapExceeded("Sybil tournament exceeds 64 teams");

  auto clone = [&](int i) { return i == 0 ? attack.u1 : n + i - 1; };
  std::vector<std::vector<int>> beats(static_cast<std::size_t>(total),
                                      std::vector<int>(static_cast<std::size_t>(total), 0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) beats[i][j] = base.beats(i, j) ? 1 : 0;
  }
  for (int c = 1; c < attack.m; ++c) {
    for (int a = 0; a < n; ++a) {
      if (a == attack.u1) continue;
      if (base.beats(attack.u1, a)) {
        beats[clone(c)][a] = 1;
      } else {
        beats[a][clone(c)] = 1;
      }
    }
  }
  for (int i = 0; i < attack.m; ++i) {
    for (int j = 0; j < attack.m; ++j) {
      if (i != j && attack.intra.beats(i, j)) beats[clone(i)][clone(j)] = 1;
    }
  }
  std::vector<std::string> names;
  if (base.has_names()) {
    names = base.names();
    for (int c = 1; c < attack.m; ++c) names.push_back(base.name(attack.u1) + "_" + std::to_string(c + 1));
  }
  return Tournament::from_matrix(beats, std::move(names));
}

TeamSet sybil_members(int base_size, int u1, int m) {
  TeamSet s = TeamSet::single(u1);
  for (int c = 1; c < m; ++c) s = s.with(base_size + c - 1);
  return s;
}

std::vector<Tournament> intra_configurations(int m) {
  if (m < 1) throw std::invalid_argument("Sybil count must be >= 1");
  return enumerate_s_adjacent(Tournament::transitive(m), TeamSet::all(m));
}

// ---------------------------------------------------------------------------

SybilRecursion::SybilRecursion(Tournament base, int u1) : base_(std::move(base)), u1_(u1) {
  if (u1_ < 0 || u1_ >= base_.size()) throw std::invalid_argument("u1 is not a team of the base");
  if (base_.size() > kMaxRecursionBase) {
    throw CapExceeded("Sybil recursion supports bases of at most " +
                      std::to_string(kMaxRecursionBase) + " teams");
  }
  const std::uint32_t count = std::uint32_t{1} << base_.size();
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    if ((mask >> u1_) & 1U) subsets_.push_back(mask);
  }
}

void SybilRecursion::extend_distribution(int m) {
  const int n = base_.size();
  const std::uint32_t solo = std::uint32_t{1} << u1_;
  std::vector<std::vector<Prob>> layer(std::size_t{1} << n);
  for (std::uint32_t alive : subsets_) {
    std::vector<Prob> d(static_cast<std::size_t>(n), Prob(0));
    if (alive == solo) {
      d[u1_] = 1;
    } else if (m == 1) {
      const WinDistribution sub = win_distribution(base_.restricted(TeamSet(alive)));
      for (int x : TeamSet(alive).members()) d[x] = sub[restricted_index(alive, x)];
    } else {
      const TeamSet alive_set(alive);
      const TeamSet others = alive_set.without(u1_);
      const long long b = (base_.beaters_of(u1_) & alive_set).size();
      const Prob clone_lost(static_cast<long>(pairs(m) + b * m));
      const std::vector<Prob>& prev = dist_layer_[alive];
      for (int x = 0; x < n; ++x) d[x] = clone_lost * prev[x];
      for (int t : others.members()) {
        const long long lost = base_.losses_within(t, alive_set) + (base_.beats(u1_, t) ? m - 1 : 0);
        if (lost == 0) continue;
        const Prob w(static_cast<long>(lost));
        const std::vector<Prob>& next = layer[alive & ~(std::uint32_t{1} << t)];
        for (int x = 0; x < n; ++x) d[x] += w * next[x];
      }
      const Prob total(static_cast<long>(pairs(others.size() + m)));
      for (auto& v : d) v /= total;
    }
    layer[alive] = std::move(d);
  }
  dist_layer_ = std::move(layer);
  dist_results_.push_back(dist_layer_[TeamSet::all(n).mask()]);
}

const std::vector<Prob>& SybilRecursion::distribution(int m) {
  if (m < 1) throw std::invalid_argument("Sybil count must be >= 1");
  while (static_cast<int>(dist_results_.size()) < m) {
    extend_distribution(static_cast<int>(dist_results_.size()) + 1);
  }
  return dist_results_[static_cast<std::size_t>(m - 1)];
}

void SybilRecursion::extend_p(int m) {
  const int n = base_.size();
  const std::uint32_t solo = std::uint32_t{1} << u1_;
  std::vector<Prob> layer(std::size_t{1} << n);
  for (std::uint32_t alive : subsets_) {
    const TeamSet alive_set(alive);
    if (alive == solo) {
      layer[alive] = 1;
      continue;
    }
    if (m == 1) {
      const TeamSet favoured = (base_.beaten_by(u1_) & alive_set).with(u1_);
      TeamSet local;
      for (int x : favoured.members()) local = local.with(restricted_index(alive, x));
      layer[alive] = coalition_win_prob(base_.restricted(alive_set), local);
      continue;
    }
    const TeamSet others = alive_set.without(u1_);
    const long long b = (base_.beaters_of(u1_) & alive_set).size();
    Prob acc = Prob(static_cast<long>(pairs(m) + b * m)) * p_layer_[alive];
    for (int t : others.members()) {
      const long long lost = base_.losses_within(t, alive_set) + (base_.beats(u1_, t) ? m - 1 : 0);
      if (lost != 0) acc += Prob(static_cast<long>(lost)) * layer[alive & ~(std::uint32_t{1} << t)];
    }
    acc /= Prob(static_cast<long>(pairs(others.size() + m)));
    layer[alive] = std::move(acc);
  }
  p_layer_ = std::move(layer);
  p_results_.push_back(p_layer_[TeamSet::all(n).mask()]);
}

const Prob& SybilRecursion::p_value(int m) {
  if (m < 1) throw std::invalid_argument("Sybil count must be >= 1");
  while (static_cast<int>(p_results_.size()) < m) extend_p(static_cast<int>(p_results_.size()) + 1);
  return p_results_[static_cast<std::size_t>(m - 1)];
}

Prob q_value(int m, const Tournament& base, int u1, int v) {
  if (v == u1 || v < 0 || v >= base.size()) {
    throw std::invalid_argument("v must be a base team other than u1");
  }
  SybilRecursion rec(base, u1);
  return rec.distribution(m)[static_cast<std::size_t>(v)];
}

// ---------------------------------------------------------------------------

SybilScan p_scan(const Tournament& base, int u1, int m_max, int crosscheck_teams) {
  if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
  if (u1 < 0 || u1 >= base.size()) throw std::invalid_argument("u1 is not a team of the base");
  SybilScan scan;
  if (is_condorcet_winner(base, u1)) {
    scan.status = ScanStatus::CondorcetAttacker;
    return scan;
  }
  SybilRecursion rec(base, u1);
  const TeamSet favoured = base.beaten_by(u1);
  const TeamSet stronger = base.beaters_of(u1);
  for (int m = 1; m <= m_max; ++m) {
    const std::vector<Prob>& d = rec.distribution(m);
    SybilScanEntry e;
    e.m = m;
    e.h = d[u1];
    e.g = 0;
    for (int v : favoured.members()) e.g += d[v];
    e.p = rec.p_value(m);
    Prob b_total = 0;
    for (int v : stronger.members()) b_total += d[v];
    if (e.p != e.h + e.g || Prob(1) - e.p != b_total) scan.recursions_agree = false;

    const int teams = base.size() + m - 1;
    if (teams <= crosscheck_teams && teams <= kMaxDpTeams) {
      const Tournament explicit_attack =
          build_sybil(SybilAttack{base, u1, m, Tournament::transitive(m)});
      const WinDistribution full = win_distribution(explicit_attack);
      const TeamSet clones = sybil_members(base.size(), u1, m);
      bool agree = full.coalition(clones) == e.h && full.coalition(favoured) == e.g &&
                   full.coalition(clones | favoured) == e.p;
      for (int v = 0; v < base.size(); ++v) {
        if (v != u1 && full[v] != d[v]) agree = false;
      }
      if (!agree) scan.full_dp_agree = false;
      e.full_dp_checked = true;
      scan.full_dp_checked_through = m;
    }
    scan.entries.push_back(std::move(e));
  }
  return scan;
}

std::optional<int> first_m_below(const SybilScan& scan, const Prob& eps) {
  for (const SybilScanEntry& e : scan.entries) {
    if (e.p < eps) return e.m;
  }
  return std::nullopt;
}

InvarianceReport sybil_invariance_check(const Tournament& base, int u1, int m, int max_m) {
  if (m < 1) throw std::invalid_argument("Sybil count must be >= 1");
  if (m > max_m) {
    throw CapExceeded("enumerating intra configurations is limited to m <= " + std::to_string(max_m));
  }
  if (base.size() + m - 1 > kMaxDpTeams) throw CapExceeded("Sybil tournament exceeds the DP cap");
  InvarianceReport report;
  report.m = m;
  SybilRecursion rec(base, u1);
  const std::vector<Prob>& q = rec.distribution(m);
  const TeamSet clones = sybil_members(base.size(), u1, m);

  std::optional<WinDistribution> first;
  std::optional<Tournament> first_attack;
  for (const Tournament& intra : intra_configurations(m)) {
    const Tournament attack = build_sybil(SybilAttack{base, u1, m, intra});
    WinDistribution dist = win_distribution(attack);
    ++report.configs;
    for (int v = 0; v < base.size(); ++v) {
      if (v == u1) continue;
      if (dist[v] != q[v]) report.matches_q = false;
      if (first && dist[v] != (*first)[v]) report.non_sybil_identical = false;
    }
    const Prob total = dist.coalition(clones);
    if (!first) {
      report.sybil_total = total;
      first = std::move(dist);
      first_attack = attack;
    } else if (total != report.sybil_total) {
      report.sybil_total_identical = false;
    }
  }
  report.coalition_gain_zero = manipulation_gain(*first_attack, clones).gain == 0;
  return report;
}

StrongMonotonicityWitness strong_monotonicity_counterexample(int m_limit) {
  const Tournament base = fixtures::three_cycle();
  constexpr int kA = 0;
  constexpr int kB = 1;
  const Prob sixth = make_prob(1, 6);
  SybilRecursion rec(base, kA);
  int m = 2;
  while (m <= m_limit && !(rec.distribution(m)[kA] < sixth)) ++m;
  if (m > m_limit) throw std::runtime_error("no counterexample found below the m limit");

  StrongMonotonicityWitness w;
  w.m = m;
  w.t_prime = build_sybil(SybilAttack{base, kA, m, Tournament::transitive(m)});
  w.coalition = sybil_members(base.size(), kA, m);
  w.t_double_prime = w.t_prime;
  for (int c = 1; c < m; ++c) {
    const int clone = base.size() + c - 1;
    w.flipped.push_back({clone, kB});
    w.t_double_prime = w.t_double_prime.with_result(kB, clone);
  }

  const Prob h = rec.distribution(m)[kA];
  if (w.t_prime.size() <= kMaxDpTeams) {
    w.r_c_prime = coalition_win_prob(w.t_prime, w.coalition);
    if (w.r_c_prime != h) throw std::logic_error("Sybil recursion disagrees with the engine");
  } else {
    w.r_c_prime = h;
  }

  // Clones a_m, ..., a_2 each lose to every remaining team in turn.
  Tournament peeled = w.t_double_prime;
  bool peel_ok = true;
  for (int c = m - 1; c >= 1; --c) {
    const int clone = base.size() + c - 1;
    if (peeled.losses(clone) != peeled.size() - 1) peel_ok = false;
    peeled = peeled.without_team(clone);
  }
  peel_ok = peel_ok && peeled == base;
  if (w.t_double_prime.size() <= kMaxDpTeams) {
    const WinDistribution full = win_distribution(w.t_double_prime);
    const WinDistribution small = win_distribution(base);
    for (int v = 0; v < base.size(); ++v) peel_ok = peel_ok && full[v] == small[v];
    w.r_c_double_prime = full.coalition(w.coalition);
  } else {
    w.r_c_double_prime = win_distribution(base)[kA];
  }
  w.peel_preserves_base = peel_ok;
  return w;
}

Prob sybil_ratio(int m, int b) {
  return make_prob(pairs(m) + static_cast<long long>(b) * m, pairs(m + 1 + b));
}

RatioReport ratio_decreasing_check(int m, int b_max) {
  if (m < 2 || b_max < 2) throw std::invalid_argument("ratio check needs m >= 2 and b_max >= 2");
  RatioReport r;
  r.m = m;
  for (int b = 1; b <= b_max; ++b) r.ratios.push_back(sybil_ratio(m, b));
  for (std::size_t i = 1; i < r.ratios.size(); ++i) {
    if (r.ratios[i] > r.ratios[i - 1]) r.non_increasing = false;
    if (i >= 2 && !(r.ratios[i] < r.ratios[i - 1])) r.strictly_decreasing_from_b2 = false;
  }
  r.b1_equals_b2 = r.ratios[0] == r.ratios[1];
  return r;
}

}  // namespace rdmlab
