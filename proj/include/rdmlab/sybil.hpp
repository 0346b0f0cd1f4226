#ifndef RDMLAB_SYBIL_HPP
#define RDMLAB_SYBIL_HPP

#include <optional>
#include <vector>

#include "rdmlab/prob.hpp"
#include "rdmlab/tournament.hpp"

namespace rdmlab {

/// u1 of `base` replaced by m clones u1..um. Clones copy u1's results against
/// every other base team; `intra` (m teams, index 0 = u1, index i = u_{i+1})
/// fixes the matches among the clones.
struct SybilAttack {
  Tournament base;
  int u1 = 0;
  int m = 1;
  Tournament intra = Tournament(1, {0});
};

/// Explicit member of Syb(base, u1, m). Base teams keep their indices; clone
/// u_i (i >= 2) becomes team base.size() + i - 2. Throws std::invalid_argument
/// for a bad u1, m < 1 or an intra tournament of the wrong size.
Tournament build_sybil(const SybilAttack& attack);

/// The clone set {u1, ..., um} inside build_sybil's output.
TeamSet sybil_members(int base_size, int u1, int m);

/// All 2^C(m,2) intra-clone configurations, in enumerate_s_adjacent order.
std::vector<Tournament> intra_configurations(int m);

/// Exact Sybil-attack probabilities without materializing the clones.
///
/// For an alive base subset A containing u1, with b members that beat u1 and
/// N = |A| - 1 + m teams in play, the first match
///   - eliminates a clone in C(m,2) + b m of the C(N,2) cases, giving (m-1, A);
///   - eliminates base team t != u1 in d_t(A) (+ m - 1 if u1 beats t) cases,
///     giving (m, A \ t).
/// m = 1 is a plain tournament and is solved by the exact engine.
class SybilRecursion {
 public:
  SybilRecursion(Tournament base, int u1);

  const Tournament& base() const { return base_; }
  int u1() const { return u1_; }

  /// Winner distribution over base teams; the u1 entry is the total
  /// probability that some clone wins (h), the others are q(m, base, u1, v).
  const std::vector<Prob>& distribution(int m);

  /// p(m) = h + g (clones or a team u1 beats), from its own scalar recursion.
  const Prob& p_value(int m);

 private:
  void extend_distribution(int m);
  void extend_p(int m);

  Tournament base_;
  int u1_;
  std::vector<std::uint32_t> subsets_;           // alive sets containing u1, by size
  std::vector<std::vector<Prob>> dist_layer_;    // current m, indexed by mask
  std::vector<std::vector<Prob>> dist_results_;  // full-set distribution per m - 1
  std::vector<Prob> p_layer_;
  std::vector<Prob> p_results_;
};

/// r_v of any member of Syb(base, u1, m); v != u1, m >= 1.
Prob q_value(int m, const Tournament& base, int u1, int v);

struct SybilScanEntry {
  int m = 1;
  Prob h;  ///< clones win
  Prob g;  ///< a team u1 beats wins
  Prob p;  ///< from the scalar recursion; equals h + g
  bool full_dp_checked = false;
};

enum class ScanStatus { Ok, CondorcetAttacker };

struct SybilScan {
  ScanStatus status = ScanStatus::Ok;
  std::vector<SybilScanEntry> entries;
  /// p = h + g and 1 - p equals the summed q of teams that beat u1, for
  /// every m.
  bool recursions_agree = true;
  /// Every entry with |base| + m - 1 <= the cross-check limit matched the
  /// full engine on an explicit attack (transitive clones).
  bool full_dp_agree = true;
  int full_dp_checked_through = 0;
};

/// h, g, p for m = 1..m_max. A Condorcet-winning u1 returns status
/// CondorcetAttacker and no entries: clones then win with probability 1.
SybilScan p_scan(const Tournament& base, int u1, int m_max, int crosscheck_teams = 12);

/// Smallest scanned m with p(m) < eps.
std::optional<int> first_m_below(const SybilScan& scan, const Prob& eps);

inline constexpr int kMaxEnumeratedSybils = 4;

struct InvarianceReport {
  int m = 1;
  std::size_t configs = 0;
  bool non_sybil_identical = true;
  bool matches_q = true;
  bool sybil_total_identical = true;
  bool coalition_gain_zero = true;
  Prob sybil_total;
  bool ok() const {
    return non_sybil_identical && matches_q && sybil_total_identical && coalition_gain_zero;
  }
};

/// Enumerates every intra configuration for m clones and checks that
/// non-clone win probabilities, and hence the clone total, never change.
/// Throws CapExceeded when m > max_m.
InvarianceReport sybil_invariance_check(const Tournament& base, int u1, int m,
                                        int max_m = kMaxEnumeratedSybils);

/// A 3-cycle attacked by m transitive clones of a (T'), and the same
/// tournament after clones a2..am throw their matches to b (T'').
struct StrongMonotonicityWitness {
  int m = 0;
  Tournament t_prime = Tournament(1, {0});
  Tournament t_double_prime = Tournament(1, {0});
  TeamSet coalition;
  Prob r_c_prime;
  Prob r_c_double_prime;
  /// Matches changed from T' to T'', as played in T' (the clone wins).
  std::vector<MatchId> flipped;
  /// Peeling the all-losing clones off T'' recovers the 3-cycle distribution.
  bool peel_preserves_base = false;
};

/// Scans m upward from 2 and returns the first m with r_C(T') < 1/6.
StrongMonotonicityWitness strong_monotonicity_counterexample(int m_limit = 1000);

/// (C(m,2) + b m) / C(m+1+b, 2).
Prob sybil_ratio(int m, int b);

struct RatioReport {
  int m = 0;
  std::vector<Prob> ratios;  ///< b = 1..b_max
  bool non_increasing = true;
  bool strictly_decreasing_from_b2 = true;
  bool b1_equals_b2 = false;
};

RatioReport ratio_decreasing_check(int m, int b_max);

}  // namespace rdmlab

#endif
