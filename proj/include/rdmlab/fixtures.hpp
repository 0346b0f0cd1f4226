#ifndef RDMLAB_FIXTURES_HPP
#define RDMLAB_FIXTURES_HPP

#include "rdmlab/tournament.hpp"

namespace rdmlab::fixtures {

/// a beats b, b beats c, c beats a.
Tournament three_cycle();

/// a1..a4 with a_i beating a_{i+1}, a4 beating a1, a1 beating a3 and a2
/// beating a4: the only 4-team tournament that does not reduce to 3 teams.
Tournament four_team();

/// Teams u, v, w, a, b (indices 0..4) with B_a = {u,v,b}, B_b = {u,v},
/// B_u = {v,w}, B_v = {w}, B_w = {a,b}.
Tournament lower_bound_five();

/// lower_bound_five() after u and v throw their matches to w.
Tournament lower_bound_five_manipulated();

}  // namespace rdmlab::fixtures

#endif
