#ifndef RDMLAB_CLI_HPP
#define RDMLAB_CLI_HPP

#include <iosfwd>

#include "rdmlab/engine.hpp"

namespace rdmlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

struct Hooks {
  /// Engine used by `verify-paper`; tests swap in broken ones.
  DistributionFn engine = win_distribution;
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, const Hooks& hooks = {});

}  // namespace rdmlab::cli

#endif
