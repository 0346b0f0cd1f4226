#include "rdmlab/manipulation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "rdmlab/engine.hpp"

namespace rdmlab {

ManipulationResult manipulation_gain(const Tournament& t, TeamSet s) {
  if (s.empty() || !s.subset_of(t.teams())) {
    throw std::invalid_argument("coalition must be a non-empty subset of the teams");
  }
  if (s.size() > kMaxCoalition) {
    throw CapExceeded("coalitions larger than " + std::to_string(kMaxCoalition) +
                      " are not enumerated");
  }
  ManipulationResult out;
  const std::vector<Tournament> adjacent = enumerate_s_adjacent(t, s);
  std::vector<Prob> values;
  values.reserve(adjacent.size());
  for (const Tournament& u : adjacent) values.push_back(coalition_win_prob(u, s));
  out.base_prob = values.front();
  out.best_prob = *std::max_element(values.begin(), values.end());
  out.gain = out.best_prob - out.base_prob;
  for (std::size_t i = 0; i < adjacent.size(); ++i) {
    if (values[i] == out.best_prob) out.witnesses.push_back(adjacent[i]);
  }
  return out;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("RDMLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

namespace {

std::vector<Tournament> all_labeled(int n) {
  return enumerate_s_adjacent(Tournament::transitive(n), TeamSet::all(n));
}

std::vector<TeamSet> k_subsets(int n, int k) {
  std::vector<TeamSet> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
    if (std::popcount(m) == k) out.emplace_back(m);
  }
  std::sort(out.begin(), out.end(), [](TeamSet a, TeamSet b) { return a.members() < b.members(); });
  return out;
}

}  // namespace

SearchSweep search_sweep(int n, int k, const SearchOptions& options) {
  if (n < 3) throw std::invalid_argument("search requires n >= 3");
  if (k < 1 || k > n) throw std::invalid_argument("search requires 1 <= k <= n");
  if (k > kMaxCoalition) throw CapExceeded("coalition size above " + std::to_string(kMaxCoalition));
  const int cap = options.allow_large ? kSearchCapLarge : kSearchCapDefault;
  if (n > cap) {
    throw CapExceeded("search n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap) +
                      (options.allow_large ? "" : " (pass --allow-large for n = 7)"));
  }
  if (!options.isomorphism_reduction && n > kSearchCapDefault) {
    throw CapExceeded("unreduced search is limited to n <= 6");
  }

  SearchSweep sweep;
  sweep.n = n;
  sweep.k = k;
  sweep.tournaments = options.isomorphism_reduction ? tournament_classes(n) : all_labeled(n);
  const std::vector<TeamSet> coalitions = k_subsets(n, k);

  const std::size_t total = sweep.tournaments.size();
  std::vector<std::vector<SearchInstance>> per_tournament(total);
  std::atomic<std::size_t> next{0};
  std::size_t finished = 0;
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      auto& slot = per_tournament[idx];
      slot.reserve(coalitions.size());
      for (TeamSet s : coalitions) {
        slot.push_back(SearchInstance{idx, s, manipulation_gain(sweep.tournaments[idx], s)});
      }
      std::lock_guard<std::mutex> lock(progress_mutex);
      ++finished;
      if (options.progress) options.progress(finished, total);
    }
  };

  const int threads = std::min<int>(resolve_threads(options.threads), static_cast<int>(total));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  for (auto& slot : per_tournament) {
    for (auto& inst : slot) sweep.instances.push_back(std::move(inst));
  }
  return sweep;
}

WorstCaseResult reduce_worst_case(const SearchSweep& sweep) {
  if (sweep.instances.empty()) throw std::invalid_argument("empty sweep");
  const SearchInstance* best = &sweep.instances.front();
  for (const SearchInstance& inst : sweep.instances) {
    if (inst.result.gain > best->result.gain) best = &inst;
  }
  WorstCaseResult out;
  out.n = sweep.n;
  out.k = sweep.k;
  out.alpha = best->result.gain;
  out.witness = sweep.tournaments[best->tournament_index];
  out.coalition = best->coalition;
  out.manipulated = best->result.witnesses.front();
  out.base_prob = best->result.base_prob;
  out.tournaments_examined = sweep.tournaments.size();
  out.instances_examined = sweep.instances.size();
  return out;
}

WorstCaseResult worst_case(int n, int k, const SearchOptions& options) {
  WorstCaseResult out = reduce_worst_case(search_sweep(n, k, options));
  const ManipulationResult check = manipulation_gain(out.witness, out.coalition);
  const Prob realized = coalition_win_prob(out.manipulated, out.coalition) -
                        coalition_win_prob(out.witness, out.coalition);
  if (check.gain != out.alpha || realized != out.alpha ||
      !is_s_adjacent(out.witness, out.manipulated, out.coalition)) {
    throw std::logic_error("worst-case witness failed re-verification");
  }
  return out;
}

MonotonicityReport alpha_monotonicity_check(int k, int n_max, const SearchOptions& options) {
  MonotonicityReport out;
  out.k = k;
  for (int n = std::max(3, k); n <= n_max; ++n) {
    out.alphas.emplace_back(n, worst_case(n, k, options).alpha);
    if (out.alphas.size() >= 2 && out.alphas.back().second < out.alphas[out.alphas.size() - 2].second) {
      out.non_decreasing = false;
    }
  }
  return out;
}

}  // namespace rdmlab
