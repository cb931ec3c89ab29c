#include "thompson/io.hpp"

#include <sstream>

#include "thompson/errors.hpp"

namespace thompson {

nlohmann::json element_to_json(const VElement& g, TreeFormat format) {
    return {{"domain", to_string(g.domain(), format)},
            {"range", to_string(g.range(), format)},
            {"perm", g.perm().images()}};
}

VElement element_from_json(const nlohmann::json& j) {
    if (j.is_string()) return parse_element(j.get<std::string>());
    if (!j.is_object() || !j.contains("domain") || !j.contains("range"))
        throw ParseError("element object needs \"domain\" and \"range\"", 0);
    try {
        const Tree domain = parse_tree(j.at("domain").get<std::string>());
        const Tree range = parse_tree(j.at("range").get<std::string>());
        Perm perm = Perm::identity(domain.leaf_count());
        if (j.contains("perm")) perm = Perm(j.at("perm").get<std::vector<std::size_t>>());
        return make_element(domain, range, perm);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed element object: ") + e.what(), 0);
    } catch (const ContractError& e) {
        throw ParseError(e.what(), 0);
    }
}

nlohmann::json report_to_json(const OracleReport& report) {
    nlohmann::json j = {{"check", report.check},
                        {"bound", report.bound},
                        {"instances", report.instances},
                        {"violations", report.violations}};
    if (!report.samples.empty()) j["samples"] = report.samples;
    return j;
}

std::vector<VElement> parse_element_list(const std::string& text) {
    std::vector<VElement> out;
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '[') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
        }
        for (const auto& item : j) out.push_back(element_from_json(item));
        return out;
    }
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        out.push_back(parse_element(line));
    }
    return out;
}

}  // namespace thompson
