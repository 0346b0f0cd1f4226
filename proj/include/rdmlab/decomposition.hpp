#ifndef RDMLAB_DECOMPOSITION_HPP
#define RDMLAB_DECOMPOSITION_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rdmlab/manipulation.hpp"
#include "rdmlab/prob.hpp"
#include "rdmlab/tournament.hpp"

namespace rdmlab {

/// (a1, a2, a3): outside teams beating exactly 1, 2, 3 coalition members.
using ProfileKey = std::array<int, 3>;

struct CoalitionProfile {
  int a1 = 0;
  int a2 = 0;
  int a3 = 0;
  int i_size = 0;  ///< |I| = a1 + 2 a2 + 3 a3
  ProfileKey key() const { return {a1, a2, a3}; }
};

/// Profile of a 3-team coalition; throws std::invalid_argument if |S| != 3.
CoalitionProfile coalition_profile(const Tournament& t, TeamSet s);

/// Match sets around a 3-team coalition S.
///   I: an S member loses to an outside team.
///   G: I plus the three internal matches (every match an S member loses).
///   Q: both teams in the same L_i, or an L_i team loses to an S member.
struct MatchSets {
  std::vector<MatchId> I;
  std::vector<MatchId> G;
  std::vector<MatchId> Q;
};

MatchSets match_sets(const Tournament& t, TeamSet s);

/// 2 a1 + a2 + C(a1,2) + C(a2,2) + C(a3,2).
long long q_size_closed_form(const CoalitionProfile& p);

/// First-step decomposition of r_S(T') - r_S(T) for S-adjacent T, T'.
struct ABCTerms {
  int n = 0;
  std::array<int, 3> members{};     ///< S in increasing index order
  std::array<int, 3> ell{};         ///< losses inside S, in T
  std::array<int, 3> ell_prime{};   ///< losses inside S, in T'
  std::array<int, 3> d_star{};      ///< losses to outside teams (same in T and T')
  Prob A;
  Prob B;
  Prob C;

  /// (A + B + C) / C(n, 2).
  Prob combined() const;
};

/// Computes A, B and C from their defining sums over (n-1)-team
/// subtournaments. Throws std::invalid_argument unless |S| = 3 and T, T'
/// are S-adjacent.
ABCTerms abc_decompose(const Tournament& t, const Tournament& t_prime, TeamSet s);

struct TermBoundReport {
  Prob a_bound;   ///< 7/3, or 1 when |I| <= 1
  Prob b_bound;   ///< |I|/3, or 0 when |I| <= 1
  Prob a_slack;   ///< a_bound - A
  Prob b_slack;   ///< b_bound - B
  bool a_holds = false;
  bool b_holds = false;
  bool holds() const { return a_holds && b_holds; }
};

TermBoundReport check_lemma_bounds(const ABCTerms& terms, int i_size);

/// Upper bounds f(a1, a2, a3) on M_n for the eleven profiles with |I| <= 4.
struct FTable {
  std::map<ProfileKey, Prob> rows;
  bool contains(const ProfileKey& k) const { return rows.count(k) != 0; }
  const Prob& at(const ProfileKey& k) const;
};

const FTable& table1();

/// Right-hand side of the first-step recurrence bounding M_n(a1, a2, a3):
///
///   (1/C(n,2)) [ A' + B' + (2a1 + C(a1,2)) f(a1-1,a2,a3)
///                + (a2 + C(a2,2)) f(a1,a2-1,a3) + C(a3,2) f(a1,a2,a3-1)
///                + (C(n,2) - |G u Q|) f(a1,a2,a3) ]
///
/// with A' = 1, B' = 0 when |I| <= 1 and A' = 7/3, B' = |I|/3 otherwise.
/// Requires the profile to be a row of `f`, n >= 3 + a1 + a2 + a3 and
/// C(n,2) >= |G u Q|; throws std::invalid_argument otherwise.
Prob delta_recurrence(const CoalitionProfile& profile, const FTable& f, int n);

/// How a bound-table row is established.
enum class RowClosure {
  DeltaFixedPoint,    ///< the recurrence returns f for every admissible n
  DominantCoalition,  ///< (0,0,0): S beats everyone outside, r_S = 1
  ClonedCoalition,    ///< (0,0,1): S members are clones, r_S is fixed
};

std::string to_string(RowClosure c);

/// Per-profile maximum manipulation gain over an exhaustive k = 3 sweep.
struct EmpiricalMax {
  Prob gain;
  Tournament witness = Tournament(1, {0});
  TeamSet coalition;
  Tournament manipulated = Tournament(1, {0});
  std::size_t instances = 0;
};

std::map<ProfileKey, EmpiricalMax> empirical_profile_maxima(const SearchSweep& sweep);

struct Table1Row {
  CoalitionProfile profile;
  Prob f;
  RowClosure closure = RowClosure::DeltaFixedPoint;
  /// Recurrence value at the smallest admissible n.
  Prob delta_value;
  /// True when the recurrence returned the same value for every admissible n
  /// up to 40.
  bool delta_n_independent = false;
  /// Empirical M_n maxima over the searched n (absent when no tournament of
  /// that size has this profile).
  std::map<int, EmpiricalMax> empirical;
  bool reproduced = false;      ///< closure established (see RowClosure)
  bool empirical_within = false;  ///< every empirical maximum <= f
};

struct Table1Report {
  std::vector<Table1Row> rows;
  int n_max = 0;
  bool ok() const;
  std::size_t reproduced_by_delta() const;
};

/// Checks every bound-table row: the recurrence (or the row's direct closure)
/// and the empirical maxima for 4 <= n <= n_max.
Table1Report verify_table1(int n_max, const SearchOptions& options = {});

/// (|I| + 7) / (3 (|I| + 3)).
Prob lemma46_bound(int i_size);

/// Per-match check of the C-term bound: each e in Q leaves a tournament with
/// the claimed smaller profile, and the gain there is at most the empirical
/// M_{n-1} of that profile.
struct CBoundCheck {
  std::size_t q_matches = 0;
  bool profiles_match = true;
  bool per_match_within = true;
  Prob c_value;
  Prob c_bound;
  bool holds() const { return profiles_match && per_match_within && c_value <= c_bound; }
};

CBoundCheck check_c_bound(const Tournament& t, const Tournament& t_prime, TeamSet s,
                          const std::map<ProfileKey, EmpiricalMax>& m_prev);

}  // namespace rdmlab

#endif
