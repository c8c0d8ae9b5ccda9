#pragma once

#include <json.hpp>

#include "pfn/bounds.hpp"
#include "pfn/experiment.hpp"
#include "pfn/partition.hpp"
#include "pfn/solve2d.hpp"

namespace pfn {

using Json = nlohmann::ordered_json;

/// Wire schema (all exact coefficients travel as decimal strings):
///   chain:    {"name": ..., "params": ["p/q", ...], "ambient"?: n,
///              "monomial_exponents"?: [..]}
///   poly:     {"nvars": k, "terms": [{"exp": [...], "num": "...", "den": "..."}]}
///   function: {"chain": {...}, "Q": {...}}
///   curve:    {"chain": {...}, "coords": [poly...], "domain": [a, b]}

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j);

Json chain_to_json(const PfaffianChain& c);
ChainPtr chain_from_json(const Json& j);

Json function_to_json(const PfaffianFunction& f);
PfaffianFunction function_from_json(const Json& j);

Json curve_to_json(const ParametricCurve& c);
ParametricCurve curve_from_json(const Json& j);

Json point_to_json(const Point& p);
Point point_from_json(const Json& j);

BoundQuery bound_query_from_json(const Json& j);
Json bound_query_to_json(const BoundQuery& q);
Json bound_value_to_json(const BoundValue& v);

SolveConfig solve_config_from_json(const Json& j);

Json root_result_to_json(const RootResult& r);
Json component_count_to_json(const ComponentCount& c);
Json solve2d_result_to_json(const Solve2dResult& r);
Json partition_to_json(const Partition& p, bool include_points = true);
Json pfaffian_partition_to_json(const PfaffianPartition& p);
Json incidence_instance_to_json(const IncidenceInstance& inst);
IncidenceInstance incidence_instance_from_json(const Json& j);
Json incidence_count_to_json(const IncidenceCount& c);
Json joints_result_to_json(const JointsResult& r);
Json experiment_report_to_json(const ExperimentReport& r, bool include_wall_time = true);
ExperimentSpec experiment_spec_from_json(const Json& j);

} // namespace pfn
