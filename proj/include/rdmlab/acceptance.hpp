#ifndef RDMLAB_ACCEPTANCE_HPP
#define RDMLAB_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rdmlab/engine.hpp"
#include "rdmlab/manipulation.hpp"

namespace rdmlab {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  /// Engine under test for the distribution goldens and property suites.
  DistributionFn engine = win_distribution;
  /// Adds the n = 6 sweep to the search criteria.
  bool include_n6 = false;
  SearchOptions search;
  std::uint64_t seed = 0x5eed2024;
};

/// Time limits, in seconds.
inline constexpr double kGoldenLimit = 1e-3;
inline constexpr double kLowerBoundLimit = 1.0;
inline constexpr double kSweepLimit = 600.0;
inline constexpr double kInvarianceLimit = 30.0;

/// Instance counts for the randomized criteria.
inline constexpr int kEq1Instances = 1000;
inline constexpr int kPropertyInstances = 500;

/// Runs criteria 1..11 in order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// Runs one criterion (1..11).
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});

}  // namespace rdmlab

#endif
