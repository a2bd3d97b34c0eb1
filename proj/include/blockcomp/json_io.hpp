#pragma once

#include "blockcomp/applications.hpp"
#include "blockcomp/approxdeg.hpp"
#include "blockcomp/boolcube.hpp"
#include "blockcomp/mainlemma.hpp"
#include "blockcomp/protocols.hpp"
#include "blockcomp/specdisc.hpp"

#include <json.hpp>

#include <string>

namespace blockcomp {

using Json = nlohmann::json;

// File formats:
//   BooleanFunction  {"n": 3, "bits": "01101001"}   character i is f(i)
//   InnerFunction    {"k": 1, "rows": [["0", "0"], ["0", "1"]]}   "u" marks undefined

BooleanFunction boolean_function_from_json(const Json& j);
Json to_json(const BooleanFunction& f);
InnerFunction inner_function_from_json(const Json& j);
Json to_json(const InnerFunction& g);

/// or:N, and:N, parity:N, maj:N, threshold:N:T, dictator:N:I, const:N:B,
/// sym:<values>, e.g. sym:01110.
BooleanFunction builtin_boolean_function(const std::string& spec);
/// ip:K, and, disj:K, disj1:K (weight K/3, intersections <= 1), random:K:SEED.
InnerFunction builtin_inner_function(const std::string& spec);

/// A path to a JSON file, or a builtin spec.
BooleanFunction load_boolean_function(const std::string& source);
InnerFunction load_inner_function(const std::string& source);

Json to_json(const ApproxDegreeResult& result);
Json to_json(const WitnessReport& report);
Json to_json(const DualWitness& witness);
Json to_json(const SpectralDiscrepancyCert& cert);
Json to_json(const CertificateReport& report);
Json to_json(const IpCorollaryReport& report);
Json to_json(const DisjLemmaReport& report);
Json to_json(const ReductionPlan& plan);
Json to_json(const CostLedger& ledger);

/// Rational vector as "p/q" strings.
Json to_json(const std::vector<Rational>& values);

}  // namespace blockcomp
