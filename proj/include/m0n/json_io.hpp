#pragma once

#include <json.hpp>

#include "m0n/harness.hpp"
#include "m0n/skeleton.hpp"
#include "m0n/tree.hpp"
#include "m0n/trop.hpp"
#include "m0n/valuation.hpp"

namespace m0n {

using nlohmann::json;

// Schemas (rationals always "p/q" with q > 0, gcd 1):
//   tree:     {"n": int, "edges": [[v,v],...], "leaf_labels": {"1": v, ...},
//              "lengths": {"a-b": "p/q", ...}}
//   point:    {"n": int, "coords": {"k,l": "p/q", ...}, "gauge": bool}
//   stratum:  {"n": int, "splits": [[leaf,...],...], "alpha": ["p/q",...]}
//   poly:     {"alphabet": [sym,...], "terms": [{"exps": [int,...], "vK": "p/q"},...]}

json to_json(const MarkedMetricTree& t);
MarkedMetricTree tree_from_json(const json& j);

json to_json(const TropPoint& x);
TropPoint trop_point_from_json(const json& j);

json to_json(const SkeletonPoint& p);
SkeletonPoint skeleton_point_from_json(const json& j);

json to_json(const LaurentPoly& f);
LaurentPoly poly_from_json(const json& j);

json to_json(const ComparisonReport& r);
json to_json(const SweepSummary::PerN& s, std::uint64_t seed);

json to_json(const IntersectionGraph& g);

} // namespace m0n
