#pragma once

// Internal helper shared by the report and g-report loaders.

#include <string>
#include <vector>

#include <json.hpp>

#include "reprank/reports.hpp"

namespace reprank::detail {

// Parses id, scores, prefers, and register from one JSON entry, with scores
// validated against the given feature tuple.
Report report_from_json(const nlohmann::json& entry, const std::vector<std::string>& features,
                        const std::string& context);

} // namespace reprank::detail
