#pragma once

#include <json.hpp>

#include "fabercone/cone.hpp"
#include "fabercone/fulton.hpp"
#include "fabercone/intersection.hpp"

namespace fabercone {

using Json = nlohmann::ordered_json;

// Canonical dump: two-space indent, trailing newline.
std::string dump_json(const Json& j);

// Divisor schema: {"g","n","lambda","delta_irr","psi":{..},"boundary":{..}}
// with rationals as canonical strings and boundary keys "i|s1,s2,..".
Json divisor_to_json(const DivisorClass& d);
DivisorClass divisor_from_json(const Json& j);
DivisorClass parse_divisor(const std::string& text);

std::string boundary_key(const ClassIndex& idx);

Json stratum_to_json(const StratumCurve& x);
Json functional_to_json(const LinearFunctional& f);

Json fnef_report_to_json(const FNefReport& rep);

// Matrix schema: {"dim": d, "rows": [["p/q", ...], ...]}.
Json matrix_to_json(int dim, const std::vector<ZVec>& rows);
Json matrix_to_json(int dim, const std::vector<QVec>& rows);
std::pair<int, std::vector<QVec>> matrix_from_json(const Json& j);

Json cone_v_to_json(const ConeV& cone);
ConeV cone_v_from_json(const Json& j);
Json cone_h_to_json(const ConeH& cone);
ConeH cone_h_from_json(const Json& j);

Json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const Json& j);

// Per-ray certificate file for the genus-0 containment run.
Json fulton_ray_file(const FultonResult& result, size_t ray_index);
std::string fulton_transcript_hash(int n, size_t ray_index, const ZVec& ray, const Certificate& cert);

Json flag_report_to_json(const FlagDivisorReport& rep);

}  // namespace fabercone
