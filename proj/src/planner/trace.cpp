#include "aifnav/planner/trace.hpp"

namespace aifnav {

nlohmann::json score_to_json(const PolicyScore& s) {
    return {{"G", s.G},
            {"info_gain", s.info_gain},
            {"param_gain", s.param_gain},
            {"utility", s.utility},
            {"collision_risk", s.collision_risk}};
}

nlohmann::json decision_to_json(const Decision& d, std::size_t step) {
    nlohmann::json policies = nlohmann::json::array();
    for (std::size_t i = 0; i < d.policies.size(); ++i) {
        auto entry = score_to_json(d.scores[i]);
        entry["policy"] = policy_label(d.policies[i]);
        entry["p"] = d.distribution[i];
        policies.push_back(std::move(entry));
    }
    return {{"schema", kTraceSchema},
            {"step", step},
            {"chosen", d.chosen},
            {"action", std::string(to_string(d.action()))},
            {"policies", std::move(policies)}};
}

void write_trace_line(std::ostream& os, const Decision& d, std::size_t step) {
    os << decision_to_json(d, step).dump() << '\n';
}

}  // namespace aifnav
