#ifndef RDMLAB_REPORT_HPP
#define RDMLAB_REPORT_HPP

#include "json.hpp"
#include "rdmlab/decomposition.hpp"
#include "rdmlab/manipulation.hpp"
#include "rdmlab/prob.hpp"
#include "rdmlab/sybil.hpp"
#include "rdmlab/tournament.hpp"

namespace rdmlab::report {

using nlohmann::json;

json tournament(const Tournament& t);
json team_list(const Tournament& t, TeamSet s);
json profile(const CoalitionProfile& p);
json manipulation(const Tournament& t, TeamSet s, const ManipulationResult& r);
json worst_case(const WorstCaseResult& r);
/// One record per bound-table row: {profile, f, delta_value, closure,
/// empirical_max, witness}.
json table1(const Table1Report& r);
/// Array of {m, h, g, p} with "p/q" strings plus *_decimal fields.
json sybil_scan(const SybilScan& scan);
json invariance(const InvarianceReport& r);
json counterexample(const StrongMonotonicityWitness& w);

}  // namespace rdmlab::report

#endif
