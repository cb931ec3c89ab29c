#pragma once

/**
 * @file io.hpp
 * @brief JSON forms of elements and oracle reports.
 *
 * Element: {"domain": <tree-text>, "range": <tree-text>, "perm": [images]}
 * Report:  {"check": ..., "bound": ..., "instances": ..., "violations": ...}
 */

#include <string>
#include <vector>

#include <json.hpp>

#include "thompson/group.hpp"
#include "thompson/oracles.hpp"

namespace thompson {

nlohmann::json element_to_json(const VElement& g, TreeFormat format = TreeFormat::parenthesized);
/// Accepts the object form or a literal string; throws ParseError.
VElement element_from_json(const nlohmann::json& j);

nlohmann::json report_to_json(const OracleReport& report);

/// A JSON array of elements, or one literal per line (blank lines and '#' comments skipped).
std::vector<VElement> parse_element_list(const std::string& text);

}  // namespace thompson
