#include "rdmlab/tournament.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "rdmlab/fixtures.hpp"

namespace rdmlab {

namespace {

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

std::string pair_str(int i, int j) {
  return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

}  // namespace

Tournament::Tournament(int n, std::vector<std::uint64_t> wins, std::vector<std::string> names)
    : n_(n), wins_(std::move(wins)), losses_(static_cast<std::size_t>(std::max(n, 0)), 0),
      names_(std::move(names)) {
  if (n < 1 || n > kMaxTeams) {
    throw ParseError("team count must be in [1, 64], got " + std::to_string(n));
  }
  if (static_cast<int>(wins_.size()) != n) {
    throw ParseError("expected " + std::to_string(n) + " rows, got " + std::to_string(wins_.size()));
  }
  if (!names_.empty() && static_cast<int>(names_.size()) != n) {
    throw ParseError("expected " + std::to_string(n) + " names, got " + std::to_string(names_.size()));
  }
  const std::uint64_t all = TeamSet::all(n).mask();
  for (int i = 0; i < n; ++i) {
    if (wins_[i] & ~all) throw ParseError("row " + std::to_string(i) + " references a team >= n", i);
    if (beats(i, i)) throw ParseError("diagonal entry " + pair_str(i, i) + " must be 0", i, i);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool ij = beats(i, j);
      const bool ji = beats(j, i);
      if (ij && ji) throw ParseError("match " + pair_str(i, j) + " has two winners", i, j);
      if (!ij && !ji) throw ParseError("match " + pair_str(i, j) + " unresolved", i, j);
    }
  }
  for (int i = 0; i < n; ++i) {
    for (std::uint64_t m = wins_[i]; m != 0; m &= m - 1) losses_[std::countr_zero(m)] |= bit(i);
  }
  for (std::size_t a = 0; a < names_.size(); ++a) {
    for (std::size_t b = a + 1; b < names_.size(); ++b) {
      if (names_[a] == names_[b]) throw ParseError("duplicate team name '" + names_[a] + "'");
    }
  }
}

Tournament Tournament::from_matrix(const std::vector<std::vector<int>>& beats,
                                   std::vector<std::string> names) {
  const int n = static_cast<int>(beats.size());
  if (n < 1 || n > kMaxTeams) throw ParseError("team count must be in [1, 64]");
  std::vector<std::uint64_t> wins(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(beats[i].size()) != n) {
      throw ParseError("row " + std::to_string(i) + " has " + std::to_string(beats[i].size()) +
                           " entries, expected " + std::to_string(n),
                       i);
    }
    for (int j = 0; j < n; ++j) {
      if (beats[i][j] != 0 && beats[i][j] != 1) {
        throw ParseError("entry " + pair_str(i, j) + " must be 0 or 1", i, j);
      }
      if (beats[i][j]) wins[i] |= bit(j);
    }
  }
  return Tournament(n, std::move(wins), std::move(names));
}

Tournament Tournament::transitive(int n) {
  std::vector<std::uint64_t> wins(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) wins[i] = TeamSet::all(n).mask() & ~TeamSet::all(i + 1).mask();
  return Tournament(n, std::move(wins));
}

std::string Tournament::name(int team) const {
  return names_.empty() ? std::to_string(team) : names_[static_cast<std::size_t>(team)];
}

std::optional<int> Tournament::find_team(std::string_view token) const {
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    if (names_[i] == token) return i;
  }
  int idx = -1;
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, idx);
  if (ec == std::errc() && ptr == end && idx >= 0 && idx < n_) return idx;
  return std::nullopt;
}

Tournament Tournament::restricted(TeamSet keep) const {
  const std::vector<int> kept = (keep & teams()).members();
  const int m = static_cast<int>(kept.size());
  std::vector<std::uint64_t> wins(static_cast<std::size_t>(m), 0);
  std::vector<std::string> names;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (beats(kept[a], kept[b])) wins[a] |= bit(b);
    }
    if (has_names()) names.push_back(names_[kept[a]]);
  }
  return Tournament(m, std::move(wins), std::move(names));
}

Tournament Tournament::without_team(int x) const {
  if (x < 0 || x >= n_) throw std::out_of_range("team " + std::to_string(x) + " out of range");
  if (n_ == 1) throw std::invalid_argument("cannot remove the only team");
  return restricted(teams().without(x));
}

Tournament Tournament::with_result(int winner, int loser) const {
  if (winner == loser || winner < 0 || loser < 0 || winner >= n_ || loser >= n_) {
    throw std::invalid_argument("invalid match " + pair_str(winner, loser));
  }
  std::vector<std::uint64_t> wins = wins_;
  wins[winner] |= bit(loser);
  wins[loser] &= ~bit(winner);
  return Tournament(n_, std::move(wins), names_);
}

Tournament Tournament::with_appended_team(TeamSet beats_set) const {
  if (n_ >= kMaxTeams) throw CapExceeded("tournament already has 64 teams");
  std::vector<std::uint64_t> wins = wins_;
  for (int i = 0; i < n_; ++i) {
    if (!beats_set.contains(i)) wins[i] |= bit(n_);
  }
  wins.push_back((beats_set & teams()).mask());
  std::vector<std::string> names = names_;
  if (!names.empty()) names.push_back("t" + std::to_string(n_));
  return Tournament(n_ + 1, std::move(wins), std::move(names));
}

Tournament Tournament::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != n_) throw std::invalid_argument("permutation size mismatch");
  std::vector<std::uint64_t> wins(static_cast<std::size_t>(n_), 0);
  std::vector<std::string> names(names_.empty() ? 0 : names_.size());
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) {
      if (beats(i, j)) wins[perm[i]] |= bit(perm[j]);
    }
    if (!names_.empty()) names[perm[i]] = names_[i];
  }
  return Tournament(n_, std::move(wins), std::move(names));
}

std::uint64_t Tournament::matrix_code() const {
  if (n_ > 8) throw CapExceeded("matrix code requires n <= 8");
  std::uint64_t code = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) code = (code << 1) | (beats(i, j) ? 1U : 0U);
  }
  return code;
}

// ---------------------------------------------------------------------------
// I/O

Tournament parse_tournament(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = nl + 1;
  }
  // A single trailing newline yields one empty final line.
  if (lines.size() > 1 && lines.back().empty()) lines.pop_back();

  if (lines.empty() || lines[0].empty()) throw ParseError("malformed header: missing team count");
  int n = 0;
  const auto* end = lines[0].data() + lines[0].size();
  auto [ptr, ec] = std::from_chars(lines[0].data(), end, n);
  if (ec != std::errc() || ptr != end) {
    throw ParseError("malformed header: '" + std::string(lines[0]) + "' is not a team count");
  }
  if (n < 1 || n > kMaxTeams) throw ParseError("malformed header: team count must be in [1, 64]");
  if (static_cast<int>(lines.size()) - 1 != n) {
    throw ParseError("non-square matrix: header says " + std::to_string(n) + " rows, found " +
                     std::to_string(lines.size() - 1));
  }
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const std::string_view row = lines[i + 1];
    if (static_cast<int>(row.size()) != n) {
      throw ParseError("non-square matrix: row " + std::to_string(i) + " has " +
                           std::to_string(row.size()) + " columns, expected " + std::to_string(n),
                       i);
    }
    for (int j = 0; j < n; ++j) {
      if (row[j] != '0' && row[j] != '1') {
        throw ParseError("entry " + pair_str(i, j) + " must be '0' or '1'", i, j);
      }
      rows[i].push_back(row[j] - '0');
    }
  }
  return Tournament::from_matrix(rows);
}

Tournament parse_tournament_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("n") || !doc.contains("beats")) {
    throw ParseError("JSON tournament needs fields \"n\" and \"beats\"");
  }
  if (!doc["n"].is_number_integer()) throw ParseError("\"n\" must be an integer");
  const int n = doc["n"].get<int>();
  const auto& beats = doc["beats"];
  if (!beats.is_array() || static_cast<int>(beats.size()) != n) {
    throw ParseError("non-square matrix: \"beats\" must have n rows");
  }
  std::vector<std::vector<int>> rows;
  for (int i = 0; i < n; ++i) {
    const auto& row = beats[static_cast<std::size_t>(i)];
    if (!row.is_array()) throw ParseError("row " + std::to_string(i) + " is not an array", i);
    std::vector<int> r;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!row[j].is_number_integer()) {
        throw ParseError("entry " + pair_str(i, static_cast<int>(j)) + " must be 0 or 1", i,
                         static_cast<int>(j));
      }
      r.push_back(row[j].get<int>());
    }
    rows.push_back(std::move(r));
  }
  std::vector<std::string> names;
  if (doc.contains("names")) {
    if (!doc["names"].is_array()) throw ParseError("\"names\" must be an array of strings");
    for (const auto& v : doc["names"]) {
      if (!v.is_string()) throw ParseError("\"names\" must be an array of strings");
      names.push_back(v.get<std::string>());
    }
  }
  return Tournament::from_matrix(rows, std::move(names));
}

Tournament parse_tournament_any(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_tournament_json(text);
  return parse_tournament(text);
}

Tournament load_tournament(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_tournament_any(ss.str());
}

std::string to_trn(const Tournament& t) {
  std::string out = std::to_string(t.size()) + "\n";
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) out += t.beats(i, j) ? '1' : '0';
    out += '\n';
  }
  return out;
}

std::string to_json_text(const Tournament& t) {
  nlohmann::json doc;
  doc["n"] = t.size();
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < t.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < t.size(); ++j) row.push_back(t.beats(i, j) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  doc["beats"] = std::move(rows);
  if (t.has_names()) doc["names"] = t.names();
  return doc.dump();
}

// ---------------------------------------------------------------------------
// Transformations

Tournament remove_team(const Tournament& t, int x) { return t.without_team(x); }

std::vector<Tournament> enumerate_s_adjacent(const Tournament& t, TeamSet s) {
  if (!s.subset_of(t.teams())) throw std::invalid_argument("coalition is not a subset of the teams");
  const std::vector<int> members = s.members();
  std::vector<std::pair<int, int>> internal;
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) internal.emplace_back(members[a], members[b]);
  }
  if (internal.size() > 30) throw CapExceeded("too many internal matches to enumerate");
  std::vector<Tournament> out;
  out.reserve(std::size_t{1} << internal.size());
  for (std::uint64_t flips = 0; flips < (std::uint64_t{1} << internal.size()); ++flips) {
    Tournament u = t;
    for (std::size_t p = 0; p < internal.size(); ++p) {
      if (!((flips >> p) & 1U)) continue;
      const auto [i, j] = internal[p];
      u = t.beats(i, j) ? u.with_result(j, i) : u.with_result(i, j);
    }
    out.push_back(std::move(u));
  }
  return out;
}

bool is_s_adjacent(const Tournament& t, const Tournament& u, TeamSet s) {
  if (t.size() != u.size()) return false;
  for (int i = 0; i < t.size(); ++i) {
    for (int j = 0; j < t.size(); ++j) {
      if (i == j || (s.contains(i) && s.contains(j))) continue;
      if (t.beats(i, j) != u.beats(i, j)) return false;
    }
  }
  return true;
}

namespace {

Tournament from_code(int n, std::uint64_t code) {
  std::vector<std::uint64_t> wins(static_cast<std::size_t>(n), 0);
  int shift = n * n - 1;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j, --shift) {
      if ((code >> shift) & 1U) wins[i] |= bit(j);
    }
  }
  return Tournament(n, std::move(wins));
}

// Minimal matrix code over all relabelings. order[p] is the original team
// placed at position p; rows are emitted in position order and the scan
// abandons a permutation once its prefix exceeds the best code so far.
std::uint64_t minimal_code(const Tournament& t) {
  const int n = t.size();
  std::array<int, 8> order{};
  std::iota(order.begin(), order.begin() + n, 0);
  std::uint64_t best = ~std::uint64_t{0};
  const int total_bits = n * n;
  do {
    std::uint64_t code = 0;
    bool pruned = false;
    for (int i = 0; i < n; ++i) {
      const std::uint64_t row = t.beaten_by(order[i]).mask();
      for (int j = 0; j < n; ++j) code = (code << 1) | ((row >> order[j]) & 1U);
      const int remaining = total_bits - (i + 1) * n;
      if (best != ~std::uint64_t{0} && (code > (best >> remaining))) {
        pruned = true;
        break;
      }
    }
    if (!pruned && code < best) best = code;
  } while (std::next_permutation(order.begin(), order.begin() + n));
  return best;
}

}  // namespace

Tournament canonical_form(const Tournament& t) {
  if (t.size() > 8) throw CapExceeded("canonical form supports n <= 8");
  return from_code(t.size(), minimal_code(t));
}

const std::vector<Tournament>& tournament_classes(int n) {
  constexpr int kMaxClassN = 7;
  if (n < 1 || n > kMaxClassN) throw CapExceeded("isomorphism classes are generated for 1 <= n <= 7");
  static std::array<std::vector<Tournament>, kMaxClassN + 1> cache;
  static std::array<std::once_flag, kMaxClassN + 1> once;
  std::call_once(once[n], [n] {
    if (n == 1) {
      cache[1].push_back(Tournament(1, {0}));
      return;
    }
    // Every n-team tournament is some (n-1)-team class plus one new team, so
    // extending each smaller representative in all 2^(n-1) ways covers all
    // classes.
    std::set<std::uint64_t> codes;
    for (const Tournament& rep : tournament_classes(n - 1)) {
      for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n - 1)); ++m) {
        codes.insert(minimal_code(rep.with_appended_team(TeamSet(m))));
      }
    }
    for (std::uint64_t c : codes) cache[n].push_back(from_code(n, c));
  });
  return cache[n];
}

bool is_condorcet_winner(const Tournament& t, int i) {
  if (i < 0 || i >= t.size()) throw std::out_of_range("team out of range");
  return t.losses(i) == 0;
}

std::optional<int> condorcet_winner(const Tournament& t) {
  for (int i = 0; i < t.size(); ++i) {
    if (t.losses(i) == 0) return i;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Fixtures

namespace fixtures {

Tournament three_cycle() {
  return Tournament::from_matrix({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}, {"a", "b", "c"});
}

Tournament four_team() {
  return Tournament::from_matrix({{0, 1, 1, 0}, {0, 0, 1, 1}, {0, 0, 0, 1}, {1, 0, 0, 0}},
                                 {"a1", "a2", "a3", "a4"});
}

Tournament lower_bound_five() {
  //                              u  v  w  a  b
  return Tournament::from_matrix({{0, 1, 1, 0, 0},   // u
                                  {0, 0, 1, 0, 0},   // v
                                  {0, 0, 0, 1, 1},   // w
                                  {1, 1, 0, 0, 1},   // a
                                  {1, 1, 0, 0, 0}},  // b
                                 {"u", "v", "w", "a", "b"});
}

Tournament lower_bound_five_manipulated() {
  return lower_bound_five().with_result(2, 0).with_result(2, 1);
}

}  // namespace fixtures

}  // namespace rdmlab
