#ifndef RDMLAB_ENGINE_HPP
#define RDMLAB_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "rdmlab/prob.hpp"
#include "rdmlab/tournament.hpp"

namespace rdmlab {

/// Largest tournament the exact subset DP accepts.
inline constexpr int kMaxDpTeams = 20;

/// Exact winner distribution; entries are non-negative and sum to 1.
struct WinDistribution {
  std::vector<Prob> probs;

  int size() const { return static_cast<int>(probs.size()); }
  const Prob& operator[](int team) const { return probs[static_cast<std::size_t>(team)]; }
  /// r_S: total probability that a member of S wins.
  Prob coalition(TeamSet s) const;
};

/// Exact RDM winner distribution.
///
/// The DP runs over alive sets. With P(A) the probability that A is exactly
/// the set of survivors at some point,
///
///   P(A \ x) += P(A) * d_x(A) / C(|A|, 2),
///
/// and r_i(T) = P({i}). Scaling P(A) by prod_{j > |A|} C(j, 2) turns every
/// update into an integer multiply-add, and those integers stay below
/// prod_{j=2}^{n} C(j, 2) < 2^99 for n <= 20, so the table is 128-bit.
///
/// Throws std::invalid_argument for n = 0 and CapExceeded for n > 20.
WinDistribution win_distribution(const Tournament& t);

/// r_S(T). S must be a subset of the teams.
Prob coalition_win_prob(const Tournament& t, TeamSet s);

/// Injection point for code that needs "some engine" (the acceptance suite
/// uses it to run against deliberately broken engines).
using DistributionFn = std::function<WinDistribution(const Tournament&)>;

struct EmpiricalDistribution {
  std::vector<double> freq;
  std::uint64_t samples = 0;
};

/// Simulates RDM `samples` times with a seeded std::mt19937_64. Reproducible
/// for a fixed seed; accepts any n <= 64.
EmpiricalDistribution win_distribution_montecarlo(const Tournament& t, std::uint64_t samples,
                                                  std::uint64_t seed);

}  // namespace rdmlab

#endif
