#pragma once

// JSON/text/CSV reports shared by the command-line tool and the acceptance run.
// Schema: {schema_version, system, p, command, inputs, branches, outcome, timings_ms}.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "weylforge/filtrate.hpp"
#include "weylforge/levi.hpp"

namespace weylforge::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct Report {
    int schema_version = kSchemaVersion;
    std::string system;
    std::int64_t p = 0;
    std::string command;
    json inputs = json::object();
    json branches = json::array();
    json outcome = json::object();
    std::map<std::string, double> timings_ms;

    json to_json() const;
    static Report from_json(const json& j);  // InvalidInput on a foreign schema version
    friend bool operator==(const Report&, const Report&) = default;
};

json weight_json(const Weight& w);
Weight weight_from_json(const RootSystem& sys, const json& j);
// {"form": ..., "terms": [[[coords], coefficient], ...]} in canonical order.
json character_json(const RootSystem& sys, const VirtualCharacter& c);
VirtualCharacter character_from_json(const RootSystem& sys, const json& j);

json verdict_json(const ScenarioVerdict& v);
ScenarioVerdict verdict_from_json(const json& j);

// Simple basis: MissingDecompositionData when the branches disagree on the sum.
Report jsf_report(const RootSystem& sys, std::int64_t p, const Weight& lambda, bool simple_basis,
                  const Fixtures* fixtures);
Report decomp_report(const RootSystem& sys, std::int64_t p, const Weight& lambda, const Fixtures* fixtures);
Report verify_report(const std::vector<ScenarioVerdict>& verdicts);
Report levi_report(const LeviSubsystem& L, const Weight& lambda);
Report propagate_report(const RootSystem& ambient, const std::optional<std::string>& base);

// Branches of a decomposition grouped by their entries at factors in pX.
json decomp_classes(const RootSystem& sys, const DecompositionBranchSet& bs);

std::string to_text(const Report& r, bool all_branches = false);
std::string to_csv(const Report& r);  // jsf, decomp and levi reports

}  // namespace weylforge::report
