#pragma once

#include <json.hpp>

#include "funcval/harness.hpp"

namespace funcval {

using nlohmann::json;

// Polytope: {"dim":2,"halfspaces":[{"c":[1,0],"d":1},...],"vertices":[[...]]}
// vertices are optional on input and always present on output.
json polytope_to_json(const Polytope& p);
Polytope polytope_from_json(const json& j);

// ConvexFn: {"dim":2,"pieces":[{"a":[1,0],"b":0},...],"domain":{...}|"free"}
// and {"infty":true,"dim":n} for the infinity element.
json convex_fn_to_json(const ConvexFn& u);
ConvexFn convex_fn_from_json(const json& j);

// Measure: {"atoms":[{"t":0,"w":1}],
//           "density":[{"lo":0,"hi":1,"poly":[1]},{"lo":1,"exp":0.5}]}
json measure_to_json(const RadonMeasure& nu);
RadonMeasure measure_from_json(const json& j);

// Partition: {"parent":{...},"cells":[{...},...]}
json partition_to_json(const PolytopalPartition& p);
PolytopalPartition partition_from_json(const json& j);

json certificate_to_json(const InductiveCertificate& cert);

json report_to_json(const SuiteReport& report);

// Oracle spec: {"k":2,"measure":{...}} with optional "dim" (default 3 or k),
// "mollify_eps" and "quad_points".
ValuationOracle oracle_from_json(const json& j);

} // namespace funcval
