#ifndef RDMLAB_TEAM_SET_HPP
#define RDMLAB_TEAM_SET_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace rdmlab {

inline constexpr int kMaxTeams = 64;

/// Subset of team indices {0, ..., 63} stored as a bitmask.
class TeamSet {
 public:
  constexpr TeamSet() = default;
  constexpr explicit TeamSet(std::uint64_t mask) : mask_(mask) {}

  static constexpr TeamSet all(int n) {
    return TeamSet(n >= 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }
  static constexpr TeamSet single(int team) { return TeamSet(std::uint64_t{1} << team); }
  static TeamSet of(std::initializer_list<int> teams) {
    TeamSet s;
    for (int t : teams) s = s.with(t);
    return s;
  }
  static TeamSet of(const std::vector<int>& teams) {
    TeamSet s;
    for (int t : teams) s = s.with(t);
    return s;
  }

  constexpr std::uint64_t mask() const { return mask_; }
  constexpr int size() const { return std::popcount(mask_); }
  constexpr bool empty() const { return mask_ == 0; }
  constexpr bool contains(int team) const { return (mask_ >> team) & 1U; }
  constexpr bool subset_of(TeamSet other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr int lowest() const { return std::countr_zero(mask_); }

  constexpr TeamSet with(int team) const { return TeamSet(mask_ | (std::uint64_t{1} << team)); }
  constexpr TeamSet without(int team) const { return TeamSet(mask_ & ~(std::uint64_t{1} << team)); }

  std::vector<int> members() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(size()));
    for (std::uint64_t m = mask_; m != 0; m &= m - 1) out.push_back(std::countr_zero(m));
    return out;
  }

  friend constexpr TeamSet operator&(TeamSet a, TeamSet b) { return TeamSet(a.mask_ & b.mask_); }
  friend constexpr TeamSet operator|(TeamSet a, TeamSet b) { return TeamSet(a.mask_ | b.mask_); }
  /// Set difference.
  friend constexpr TeamSet operator-(TeamSet a, TeamSet b) { return TeamSet(a.mask_ & ~b.mask_); }
  friend constexpr bool operator==(TeamSet, TeamSet) = default;
  friend constexpr auto operator<=>(TeamSet, TeamSet) = default;

 private:
  std::uint64_t mask_ = 0;
};

}  // namespace rdmlab

#endif
