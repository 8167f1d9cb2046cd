#pragma once

#include <json.hpp>

#include "bollobas/gallery.hpp"
#include "bollobas/probe.hpp"
#include "bollobas/sums.hpp"

namespace bl {

using nlohmann::json;

// finite doubles as numbers, the rest as "inf", "-inf", "nan"
json jnum(double v);
double num_from_json(const json& j, const std::string& what);
// a real number or [re, im]
json jscalar(cplx z);
cplx scalar_from_json(const json& j, const std::string& what);
json jvec(const Vec& v);
Vec vec_from_json(const json& j, const std::string& what);

// {"p": 2, "dim": 4, "field": "real"} or {"sum": [a, b], "outer_p": 1}; a missing dim takes dim_override
Space space_from_json(const json& j, int dim_override = 0);
json to_json(const Space& s);

SequenceSpec sequence_from_json(const json& j);
json to_json(const SequenceSpec& s);

// {"kind": "dense" | "diagonal" | "rank_one" | "functional" | "adjoint" | "lift" | "delift" | "direct_sum" |
//  "scale" | "gallery", "space": {...}, ...}
Operator operator_from_json(const json& j, int dim_override = 0);
json to_json(const Operator& t);
// the operator of a gallery URI, with dim replaced when dim_override > 0
Operator uri_operator(std::string uri, int dim_override = 0);

// "eps" or {"kind": "epsilon" | "constant" | "scale" | "power" | "min" | "compose" | "modulus" | "hilbert_exact", ...}
EtaFunction eta_from_json(const json& j);

json to_json(const NormResult& r);
json to_json(const NuResult& r);
json to_json(const NormingSet& n);
json to_json(const NuAttaining& a);
json to_json(const ProbeReport& r);
json to_json(const ValidationReport& v);
json to_json(const SumTransferResult& r, const std::vector<double>& eps);
json to_json(const PsumReport& r);
json to_json(const CornerReport& r);
json to_json(const ClaimResult& c);

}  // namespace bl
