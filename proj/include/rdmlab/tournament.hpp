#ifndef RDMLAB_TOURNAMENT_HPP
#define RDMLAB_TOURNAMENT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rdmlab/errors.hpp"
#include "rdmlab/team_set.hpp"

namespace rdmlab {

/// A played match, oriented winner -> loser.
struct MatchId {
  int winner = 0;
  int loser = 0;
  friend bool operator==(const MatchId&, const MatchId&) = default;
  friend auto operator<=>(const MatchId&, const MatchId&) = default;
};

/// Complete, antisymmetric beats relation on n teams (1 <= n <= 64).
///
/// Row i is stored as the bitmask of teams that i beats. Optional team names
/// are carried as metadata; equality compares only the relation.
class Tournament {
 public:
  /// Validates the relation; throws ParseError naming the first bad entry.
  Tournament(int n, std::vector<std::uint64_t> wins, std::vector<std::string> names = {});

  static Tournament from_matrix(const std::vector<std::vector<int>>& beats,
                                std::vector<std::string> names = {});
  /// Team i beats team j iff i < j.
  static Tournament transitive(int n);

  int size() const { return n_; }
  bool beats(int i, int j) const { return (wins_[i] >> j) & 1U; }
  /// B_x: the teams x beats.
  TeamSet beaten_by(int x) const { return TeamSet(wins_[x]); }
  /// The teams x loses to.
  TeamSet beaters_of(int x) const { return TeamSet(losses_[x]); }
  /// d_x: number of teams x loses to.
  int losses(int x) const { return beaters_of(x).size(); }
  int losses_within(int x, TeamSet alive) const { return (beaters_of(x) & alive).size(); }
  TeamSet teams() const { return TeamSet::all(n_); }

  const std::vector<std::string>& names() const { return names_; }
  bool has_names() const { return !names_.empty(); }
  /// Name if present, otherwise the decimal index.
  std::string name(int team) const;
  /// Resolves a name, or a decimal index when no name matches.
  std::optional<int> find_team(std::string_view token) const;

  /// T \ x. Survivors keep their relative order.
  Tournament without_team(int x) const;
  /// Subtournament on `keep`, order preserving.
  Tournament restricted(TeamSet keep) const;
  /// Copy in which `winner` beats `loser`, everything else unchanged.
  Tournament with_result(int winner, int loser) const;
  /// Appends team n that beats exactly `beats` and loses to everyone else.
  Tournament with_appended_team(TeamSet beats) const;
  /// sigma(T): old team i becomes team perm[i].
  Tournament permuted(std::span<const int> perm) const;

  /// Row-major n*n bit code, entry (0,0) most significant. Requires n <= 8.
  std::uint64_t matrix_code() const;

  friend bool operator==(const Tournament& a, const Tournament& b) {
    return a.n_ == b.n_ && a.wins_ == b.wins_;
  }

 private:
  int n_;
  std::vector<std::uint64_t> wins_;
  std::vector<std::uint64_t> losses_;
  std::vector<std::string> names_;
};

/// Parses the `.trn` text format (first line n, then n rows of '0'/'1').
Tournament parse_tournament(std::string_view text);
/// Parses the JSON mirror {"n": int, "beats": [[0/1,...],...], "names": [...]?}.
Tournament parse_tournament_json(std::string_view text);
/// Dispatches on the first non-blank character ('{' means JSON).
Tournament parse_tournament_any(std::string_view text);
/// Reads and parses a file; ParseError on I/O failure as well.
Tournament load_tournament(const std::string& path);

std::string to_trn(const Tournament& t);
std::string to_json_text(const Tournament& t);

Tournament remove_team(const Tournament& t, int x);

/// All 2^C(|S|,2) tournaments that agree with T outside S. Index 0 is T
/// itself; bit b of the index flips the b-th internal pair (i<j, row-major).
std::vector<Tournament> enumerate_s_adjacent(const Tournament& t, TeamSet s);

/// True iff T and U have the same size and agree on every match not inside S.
bool is_s_adjacent(const Tournament& t, const Tournament& u, TeamSet s);

/// Lexicographically minimal beats matrix over all relabelings (n <= 8).
Tournament canonical_form(const Tournament& t);

/// One canonical representative per isomorphism class of n-team tournaments,
/// sorted by matrix code (n <= 7).
const std::vector<Tournament>& tournament_classes(int n);

bool is_condorcet_winner(const Tournament& t, int i);
std::optional<int> condorcet_winner(const Tournament& t);

}  // namespace rdmlab

#endif
