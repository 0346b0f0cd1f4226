#include "rdmlab/engine.hpp"

#include <random>
#include <stdexcept>

namespace rdmlab {

namespace {

using u128 = unsigned __int128;

mpz_class to_mpz(u128 v) {
  mpz_class hi(static_cast<unsigned long>(static_cast<std::uint64_t>(v >> 64)));
  mpz_class lo(static_cast<unsigned long>(static_cast<std::uint64_t>(v)));
  return (hi << 64) + lo;
}

}  // namespace

Prob WinDistribution::coalition(TeamSet s) const {
  Prob total = 0;
  for (int i : s.members()) {
    if (i >= size()) throw std::out_of_range("coalition member out of range");
    total += probs[static_cast<std::size_t>(i)];
  }
  return total;
}

WinDistribution win_distribution(const Tournament& t) {
  const int n = t.size();
  if (n < 1) throw std::invalid_argument("empty tournament");
  if (n > kMaxDpTeams) {
    throw CapExceeded("exact distribution supports at most " + std::to_string(kMaxDpTeams) +
                      " teams (got " + std::to_string(n) + "); use Monte Carlo");
  }
  WinDistribution out;
  if (n == 1) {
    out.probs.assign(1, Prob(1));
    return out;
  }

  std::vector<std::uint32_t> beaters(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) beaters[x] = static_cast<std::uint32_t>(t.beaters_of(x).mask());

  const std::uint32_t full = static_cast<std::uint32_t>(TeamSet::all(n).mask());
  std::vector<u128> reach(std::size_t{full} + 1, 0);
  reach[full] = 1;
  // Supersets are numerically larger than their subsets, so a descending
  // sweep finalizes each alive set before it is expanded.
  for (std::uint32_t alive = full; alive != 0; --alive) {
    const u128 weight = reach[alive];
    if (weight == 0 || std::popcount(alive) < 2) continue;
    for (std::uint32_t rest = alive; rest != 0; rest &= rest - 1) {
      const int x = std::countr_zero(rest);
      const int d = std::popcount(beaters[x] & alive);
      if (d != 0) reach[alive & ~(std::uint32_t{1} << x)] += weight * static_cast<unsigned>(d);
    }
  }

  mpz_class denom = 1;
  for (int j = 2; j <= n; ++j) denom *= static_cast<unsigned long>(pairs(j));
  out.probs.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    Prob p(to_mpz(reach[std::uint32_t{1} << i]), denom);
    p.canonicalize();
    out.probs.push_back(std::move(p));
  }
  return out;
}

Prob coalition_win_prob(const Tournament& t, TeamSet s) {
  if (!s.subset_of(t.teams())) throw std::invalid_argument("coalition is not a subset of the teams");
  if (s.empty()) return Prob(0);
  if (s == t.teams()) return Prob(1);
  return win_distribution(t).coalition(s);
}

EmpiricalDistribution win_distribution_montecarlo(const Tournament& t, std::uint64_t samples,
                                                  std::uint64_t seed) {
  if (samples == 0) throw std::invalid_argument("samples must be >= 1");
  const int n = t.size();
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> wins(static_cast<std::size_t>(n), 0);
  std::vector<int> alive;
  alive.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    alive.clear();
    for (int i = 0; i < n; ++i) alive.push_back(i);
    while (alive.size() > 1) {
      std::uniform_int_distribution<std::size_t> first(0, alive.size() - 1);
      std::uniform_int_distribution<std::size_t> second(0, alive.size() - 2);
      const std::size_t a = first(rng);
      std::size_t b = second(rng);
      if (b >= a) ++b;
      const std::size_t loser = t.beats(alive[a], alive[b]) ? b : a;
      alive[loser] = alive.back();
      alive.pop_back();
    }
    ++wins[alive.front()];
  }
  EmpiricalDistribution out;
  out.samples = samples;
  for (std::uint64_t w : wins) out.freq.push_back(static_cast<double>(w) / static_cast<double>(samples));
  return out;
}

}  // namespace rdmlab
