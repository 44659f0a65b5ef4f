#pragma once

#include "koszpert/oracle.hpp"
#include "koszpert/perturb.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace koszpert {

inline constexpr std::string_view kVersion = "0.1.0";

using Json = nlohmann::json;  // std::map-backed, so keys come out sorted

enum class Format { text, json };

/// p, vars, D, dim_R, version.
Json ring_json(const LocalAlgebra& algebra);
Json info_json(const LocalAlgebra& algebra);

Json profile_json(const HomologyProfile& profile);
Json invariants_json(const SequenceInvariants& inv);
Json bound_json(const PerturbationBound& bound, const NkTable& nk);

Json to_json(const Witness& w);
Witness witness_from_json(const Json& j);

/// The full verify document minus the ring header; inverse of report_from_json.
Json to_json(const PerturbationReport& report);
PerturbationReport report_from_json(const Json& j);

Json to_json(const IndexSearchResult& result);
Json to_json(const StabilityReport& report);
Json to_json(const std::vector<oracle::OracleReport>& reports);

/// Merges `body` into the ring header.
Json document(const LocalAlgebra& algebra, const Json& body);

/// Deterministic rendering: indented JSON, or aligned key/value lines with
/// arrays of objects laid out as tables.
std::string emit(const Json& doc, Format format);

}  // namespace koszpert
