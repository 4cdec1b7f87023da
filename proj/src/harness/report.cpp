#include <sstream>

#include "aifnav/harness/experiments.hpp"

namespace aifnav {
namespace {

nlohmann::json opt(const std::optional<std::size_t>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::string cell(const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : ""; }

}  // namespace

nlohmann::json result_to_json(const RunResult& r) {
    nlohmann::json seeds = nlohmann::json::array();
    for (const auto& s : r.seeds)
        seeds.push_back({{"seed", s.seed},
                         {"steps", opt(s.steps)},
                         {"steps_visit_all", opt(s.steps_visit_all)},
                         {"baseline_steps", opt(s.baseline_steps)},
                         {"shortest", opt(s.shortest)},
                         {"seconds", s.seconds},
                         {"detail", s.detail}});
    nlohmann::json out{{"schema", "aifnav.result/1"},
                       {"kind", std::string(to_string(r.kind))},
                       {"environment", r.environment},
                       {"oracle", r.oracle},
                       {"seconds", r.seconds},
                       {"seeds", std::move(seeds)}};
    if (!r.route_counts.empty()) out["route_counts"] = r.route_counts;
    return out;
}

// Timing is left out so that equal specs give byte-identical tables.
std::string result_to_csv(const RunResult& r) {
    std::ostringstream os;
    os << "kind,environment,seed,oracle,steps,steps_visit_all,baseline_steps,shortest\n";
    for (const auto& s : r.seeds)
        os << to_string(r.kind) << ',' << r.environment << ',' << s.seed << ',' << r.oracle << ',' << cell(s.steps)
           << ',' << cell(s.steps_visit_all) << ',' << cell(s.baseline_steps) << ',' << cell(s.shortest) << '\n';
    return os.str();
}

}  // namespace aifnav
