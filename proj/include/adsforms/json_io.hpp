#pragma once

#include <string>

#include <json.hpp>

#include "adsforms/theorems.hpp"

namespace adsforms {

using json = nlohmann::ordered_json;

/// {"const": r} | {"var": k} | {"op": "add"|"mul"|"neg"|"div"|"sqrt", "args": [...]} |
/// {"op": "pow", "base": e, "exp": k}. Nodes are rebuilt verbatim.
json to_json(const Expr& e);
Expr expr_from_json(const json& j);

/// {"degree", "dim", "space", "terms": [{"indices": [...], "coeff": expr}]}; indices
/// may be unsorted and are canonicalized with their permutation sign.
json to_json(const Form& a);
Form form_from_json(const json& j);

json to_json(const Geometry& geo);
Geometry geometry_from_json(const json& j);

json to_json(const ChartOptions& c);
ChartOptions chart_options_from_json(const json& j);

json to_json(const ResidualReport& r);
/// {"cases": [...], "summary": {"pass", "fail", "sign_eq5", "coeff_eq2"}}.
json to_json(const SuiteResult& result);

/// Overlays the fields present in `j` onto `config`; unknown keys are rejected.
void apply_config_json(const json& j, SuiteConfig& config);

/// Writes the suite report with a trailing newline; throws std::runtime_error on I/O failure.
void emit_report(const SuiteResult& result, const std::string& path);

}  // namespace adsforms
