#pragma once

// JSON specs for functions, measures and boundary sets, and JSON renderings
// of the results. Malformed input raises SchemaError; well-formed input with
// out-of-domain values raises DomainError.
//
// function: {"rotation": t, "blaschke": [{"re":, "im":, "mult":}],
//            "atoms": [{"angle":, "mass":}], "dyadic": {"depth":, "masses": [...]}}
// set:      {"gaps": [{"start":, "length":}]} or {"cantor": {"rule":, "levels":}}
//
// Atom angles and masses and dyadic masses may be numbers or exact strings
// such as "1/3".

#include <string>

#include "json.hpp"

#include "innerent/bcsets.hpp"
#include "innerent/entropy.hpp"
#include "innerent/heavy_light.hpp"
#include "innerent/innerfn.hpp"
#include "innerent/measure.hpp"
#include "innerent/sublevel.hpp"

namespace innerent {

using Json = nlohmann::ordered_json;

Json read_json_file(const std::string& path);

InnerFunctionSpec parse_function_spec(const Json& j);
/// The "atoms" and "dyadic" members of a function spec.
SingularMeasure parse_measure(const Json& j);
BoundarySet parse_boundary_set(const Json& j);

Json to_json(const HeavyLightForest& forest, const HeavyLightCheck& check);
Json to_json(const BcSeries& series);
Json to_json(const BcClassification& c);
Json to_json(const SublevelResult& r);
Json to_json(const GoodLambdaTable& t);
Json to_json(const QuadratureConfig& cfg);

}  // namespace innerent
