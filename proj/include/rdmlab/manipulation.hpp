#ifndef RDMLAB_MANIPULATION_HPP
#define RDMLAB_MANIPULATION_HPP

#include <cstddef>
#include <functional>
#include <vector>

#include "rdmlab/prob.hpp"
#include "rdmlab/tournament.hpp"

namespace rdmlab {

/// Largest coalition whose 2^C(k,2) internal outcomes are enumerated.
inline constexpr int kMaxCoalition = 6;
/// Default and flag-enabled caps for the exhaustive search.
inline constexpr int kSearchCapDefault = 6;
inline constexpr int kSearchCapLarge = 7;

struct ManipulationResult {
  Prob base_prob;  ///< r_S(T)
  Prob best_prob;  ///< max over S-adjacent T'
  Prob gain;       ///< best_prob - base_prob, always >= 0
  /// Every S-adjacent tournament attaining best_prob, in enumeration order.
  std::vector<Tournament> witnesses;
};

/// alpha_S(T): exact best gain from rewiring the matches inside S.
ManipulationResult manipulation_gain(const Tournament& t, TeamSet s);

struct SearchOptions {
  /// 0 means RDMLAB_THREADS if set, else hardware concurrency.
  int threads = 0;
  /// Permit n up to kSearchCapLarge.
  bool allow_large = false;
  /// Search one representative per isomorphism class. When false every
  /// labeled tournament is searched (n <= 6 only).
  bool isomorphism_reduction = true;
  /// Called with (tournaments finished, total); may be invoked from worker
  /// threads but never concurrently.
  std::function<void(std::size_t, std::size_t)> progress;
};

/// One searched (tournament, coalition) pair.
struct SearchInstance {
  std::size_t tournament_index = 0;
  TeamSet coalition;
  ManipulationResult result;
};

/// The full record of an exhaustive sweep.
struct SearchSweep {
  int n = 0;
  int k = 0;
  std::vector<Tournament> tournaments;
  /// Ordered by (tournament_index, coalition) regardless of thread count.
  std::vector<SearchInstance> instances;
};

/// Manipulation gains for every searched tournament and every unordered
/// k-subset. Throws CapExceeded when n exceeds the active cap.
SearchSweep search_sweep(int n, int k, const SearchOptions& options = {});

struct WorstCaseResult {
  int n = 0;
  int k = 0;
  Prob alpha;  ///< alpha_{k,n}
  Tournament witness = Tournament(1, {0});
  TeamSet coalition;
  Tournament manipulated = Tournament(1, {0});
  Prob base_prob;
  std::size_t tournaments_examined = 0;
  std::size_t instances_examined = 0;
};

/// Reduces a sweep to its maximum. Ties go to the first instance in sweep
/// order and, within it, to the first witness.
WorstCaseResult reduce_worst_case(const SearchSweep& sweep);

/// alpha_{k,n} by exhaustive search; requires 3 <= n and 1 <= k <= n. The
/// returned witness is re-verified before returning.
WorstCaseResult worst_case(int n, int k, const SearchOptions& options = {});

struct MonotonicityReport {
  int k = 0;
  std::vector<std::pair<int, Prob>> alphas;  ///< (n, alpha_{k,n})
  bool non_decreasing = true;
};

/// alpha_{k,n} for n = max(3, k) .. n_max, with a non-decrease check.
MonotonicityReport alpha_monotonicity_check(int k, int n_max, const SearchOptions& options = {});

/// Resolves SearchOptions::threads.
int resolve_threads(int requested);

}  // namespace rdmlab

#endif
