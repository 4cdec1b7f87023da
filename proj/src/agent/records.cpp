#include <stdexcept>

#include "aifnav/agent/agent.hpp"

namespace aifnav {

nlohmann::json record_to_json(const StepRecord& r) {
    nlohmann::json j{{"step", r.step},
                     {"action", std::string(to_string(r.action))},
                     {"colour", r.colour},
                     {"flags", {r.flags[0], r.flags[1], r.flags[2], r.flags[3]}},
                     {"posterior", r.posterior},
                     {"confidence", r.confidence},
                     {"vfe", r.vfe},
                     {"policy", r.policy},
                     {"mode", std::string(to_string(r.mode))},
                     {"learned", r.learned},
                     {"idle", r.idle}};
    j["map_pose"] = r.map_pose ? nlohmann::json{r.map_pose->row, r.map_pose->col} : nlohmann::json(nullptr);
    j["policy_id"] = r.policy_id ? nlohmann::json(*r.policy_id) : nlohmann::json(nullptr);
    return j;
}

StepRecord record_from_json(const nlohmann::json& j) {
    StepRecord r;
    r.step = j.at("step").get<std::size_t>();
    const auto a = parse_action(j.at("action").get<std::string>());
    if (!a) throw std::invalid_argument("step record: bad action");
    r.action = *a;
    r.colour = j.at("colour").get<int>();
    for (std::size_t k = 0; k < kNumMoves; ++k) r.flags[k] = j.at("flags").at(k).get<bool>();
    if (!j.at("map_pose").is_null()) r.map_pose = Pose{j["map_pose"][0].get<int>(), j["map_pose"][1].get<int>()};
    r.posterior = j.at("posterior").get<std::vector<double>>();
    r.confidence = j.at("confidence").get<double>();
    r.vfe = j.at("vfe").get<double>();
    if (!j.at("policy_id").is_null()) r.policy_id = j["policy_id"].get<std::size_t>();
    r.policy = j.at("policy").get<std::string>();
    r.mode = j.at("mode").get<std::string>() == "Lost" ? LocalisationMode::Lost : LocalisationMode::Confident;
    r.learned = j.at("learned").get<bool>();
    r.idle = j.at("idle").get<bool>();
    return r;
}

}  // namespace aifnav
