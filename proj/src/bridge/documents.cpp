#include "aifnav/bridge/documents.hpp"

#include <set>
#include <stdexcept>

#include "aifnav/planner/trace.hpp"

namespace aifnav::bridge {
namespace {

using nlohmann::json;

RoomCoord coord_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
        throw std::invalid_argument("expected a room as [row, col]");
    return {j[0].get<int>(), j[1].get<int>()};
}

json coord_to_json(RoomCoord r) { return {r.row, r.col}; }

Door door_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("expected a door as [[row, col], [row, col]]");
    return make_door(coord_from_json(j[0]), coord_from_json(j[1]));
}

template <typename T>
T number(const json& j, const char* key) {
    if (!j.is_number()) throw std::invalid_argument(std::string("config: ") + key + " must be a number");
    if constexpr (std::is_integral_v<T>) {
        if (!j.is_number_integer()) throw std::invalid_argument(std::string("config: ") + key + " must be an integer");
        if constexpr (std::is_unsigned_v<T>)
            if (j.get<long long>() < 0) throw std::invalid_argument(std::string("config: ") + key + " must be >= 0");
    }
    return j.get<T>();
}

}  // namespace

void SessionOptions::validate() const {
    agent.validate();
    if (step_cap == 0) throw std::invalid_argument("config: step_cap must be >= 1");
    if (!(goal_weight >= 0.0)) throw std::invalid_argument("config: goal_weight must be >= 0");
    if (interval_ms < 1) throw std::invalid_argument("config: interval_ms must be >= 1");
}

SessionOptions options_from_json(const json& doc) {
    SessionOptions o;
    if (doc.is_null()) return o;
    if (!doc.is_object()) throw std::invalid_argument("config: expected an object");
    auto& p = o.agent.planner;
    auto& pref = o.agent.preference;
    for (const auto& [key, v] : doc.items()) {
        if (key == "lookahead") p.lookahead = number<int>(v, "lookahead");
        else if (key == "gamma") p.gamma = number<double>(v, "gamma");
        else if (key == "strategy") p.strategy = parse_strategy(v.get<std::string>());
        else if (key == "seed") p.seed = number<std::uint64_t>(v, "seed");
        else if (key == "utility_weight") pref.utility_weight = number<double>(v, "utility_weight");
        else if (key == "goal_colour") pref.goal_colour = v.is_null() ? std::nullopt : std::optional<int>(number<int>(v, "goal_colour"));
        else if (key == "goal_strength") pref.goal_strength = number<double>(v, "goal_strength");
        else if (key == "collision_epsilon") pref.collision_epsilon = number<double>(v, "collision_epsilon");
        else if (key == "confidence_gate") o.agent.confidence_gate = number<double>(v, "confidence_gate");
        else if (key == "count_floor") o.agent.model.count_floor = number<double>(v, "count_floor");
        else if (key == "step_cap") o.step_cap = number<std::size_t>(v, "step_cap");
        else if (key == "goal_weight") o.goal_weight = number<double>(v, "goal_weight");
        else if (key == "interval_ms") o.interval_ms = number<int>(v, "interval_ms");
        else throw std::invalid_argument("config: unknown key " + key);
    }
    o.validate();
    return o;
}

json options_to_json(const SessionOptions& o) {
    const auto& p = o.agent.planner;
    const auto& pref = o.agent.preference;
    return {{"lookahead", p.lookahead},
            {"gamma", p.gamma},
            {"strategy", std::string(to_string(p.strategy))},
            {"seed", p.seed},
            {"utility_weight", pref.utility_weight},
            {"goal_colour", pref.goal_colour ? json(*pref.goal_colour) : json(nullptr)},
            {"goal_strength", pref.goal_strength},
            {"collision_epsilon", pref.collision_epsilon},
            {"confidence_gate", o.agent.confidence_gate},
            {"count_floor", o.agent.model.count_floor},
            {"step_cap", o.step_cap},
            {"goal_weight", o.goal_weight},
            {"interval_ms", o.interval_ms}};
}

InterventionRequest intervention_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string())
        throw std::invalid_argument("intervention: expected an object with a string type");
    const auto type = doc["type"].get<std::string>();
    if (type == "block_door") return {BlockDoor{door_from_json(doc.at("door"))}, std::nullopt};
    if (type == "unblock_door") return {UnblockDoor{door_from_json(doc.at("door"))}, std::nullopt};
    if (type == "kidnap") return {KidnapTo{coord_from_json(doc.at("room"))}, std::nullopt};
    if (type == "set_goal") {
        if (!doc.contains("colour") || !doc["colour"].is_number_integer())
            throw std::invalid_argument("intervention: set_goal needs an integer colour");
        std::optional<double> w;
        if (doc.contains("weight")) w = number<double>(doc["weight"], "weight");
        if (w && !(*w >= 0.0)) throw std::invalid_argument("intervention: weight must be >= 0");
        return {SetGoal{doc["colour"].get<int>()}, w};
    }
    if (type == "clear_goal") return {ClearGoal{}, std::nullopt};
    throw std::invalid_argument("intervention: unknown type " + type);
}

json intervention_to_json(const Intervention& i) {
    struct Visitor {
        json operator()(const BlockDoor& b) const {
            return {{"type", "block_door"}, {"door", {coord_to_json(b.door.a), coord_to_json(b.door.b)}}};
        }
        json operator()(const UnblockDoor& b) const {
            return {{"type", "unblock_door"}, {"door", {coord_to_json(b.door.a), coord_to_json(b.door.b)}}};
        }
        json operator()(const KidnapTo& k) const { return {{"type", "kidnap"}, {"room", coord_to_json(k.room)}}; }
        json operator()(const SetGoal& g) const { return {{"type", "set_goal"}, {"colour", g.colour}}; }
        json operator()(const ClearGoal&) const { return {{"type", "clear_goal"}}; }
    };
    return std::visit(Visitor{}, i);
}

json environment_summary(const Layout& layout) {
    return {{"name", layout.name},
            {"rows", layout.rows()},
            {"cols", layout.cols()},
            {"rooms", layout.rooms().size()},
            {"start", coord_to_json(layout.start)},
            {"goal_colour", layout.goal_colour ? json(*layout.goal_colour) : json(nullptr)},
            {"oracle_coverage", layout.oracle_coverage ? json(*layout.oracle_coverage) : json(nullptr)},
            {"notes", layout.notes}};
}

json snapshot_document(const SnapshotContext& ctx, const Environment& env, const Agent& agent) {
    const Layout& layout = env.layout();
    const EnvState& st = env.state();

    json doors = json::array();
    for (const auto& d : layout.doors)
        doors.push_back({{"a", coord_to_json(d.a)}, {"b", coord_to_json(d.b)}, {"blocked", st.blocked.count(d) > 0}});
    json grid{{"name", layout.name},
              {"rows", layout.rows()},
              {"cols", layout.cols()},
              {"colours", layout.colours},
              {"doors", std::move(doors)},
              {"start", coord_to_json(layout.start)},
              {"agent", coord_to_json(st.agent)},
              {"goal_colour", st.goal_colour ? json(*st.goal_colour) : json(nullptr)}};

    const auto& model = agent.model();
    const auto& colours = agent.colour_of_observation();
    const auto& q = agent.belief().states;
    json states = json::array();
    for (std::size_t s = 0; s < model.num_states(); ++s) {
        const auto col = model.observation_column(s);
        std::size_t best = 0;
        for (std::size_t o = 1; o < col.size(); ++o)
            if (col[o] > col[best]) best = o;
        json entry{{"state", s}, {"p", s < q.size() ? q[s] : 0.0}, {"colour", colours[best]}, {"colour_p", col[best]}};
        if (auto p = model.map_pose(s)) {
            const Pose& pose = model.pose_graph().pose(*p);
            entry["pose"] = {pose.row, pose.col};
        } else {
            entry["pose"] = nullptr;
        }
        states.push_back(std::move(entry));
    }
    json belief{{"states", std::move(states)},
                {"confidence", agent.belief().confidence},
                {"mode", std::string(to_string(agent.mode()))}};
    if (auto mp = agent.map_pose()) belief["map_pose"] = {mp->row, mp->col};
    else belief["map_pose"] = nullptr;

    json decision = nullptr;
    if (const auto& d = agent.last_decision()) {
        decision = decision_to_json(*d, agent.steps_taken());
        decision.erase("schema");
    }
    const auto& prefs = agent.config().preference;
    json preference{{"goal_colour", prefs.goal_colour ? json(*prefs.goal_colour) : json(nullptr)},
                    {"utility_weight", prefs.utility_weight}};

    json model_shape{{"states", model.num_states()},
                     {"observations", model.num_observations()},
                     {"poses", model.num_poses()},
                     {"state_capacity", model.state_capacity()},
                     {"observation_capacity", model.observation_capacity()}};

    json map = agent.export_map();
    map.erase("schema");
    return {{"schema", kSnapshotSchema},
            {"session", ctx.session},
            {"sequence", ctx.sequence},
            {"event", {{"kind", ctx.event}, {"description", ctx.description}}},
            {"run_mode", ctx.run_mode},
            {"finished", ctx.finished},
            {"steps", agent.steps_taken()},
            {"grid", std::move(grid)},
            {"belief", std::move(belief)},
            {"model", std::move(model_shape)},
            {"preference", std::move(preference)},
            {"decision", std::move(decision)},
            {"map", std::move(map)},
            {"last_record", agent.records().empty() ? json(nullptr) : record_to_json(agent.records().back())}};
}

json error_document(const std::string& code, const std::string& message) {
    return {{"schema", kErrorSchema}, {"error", {{"code", code}, {"message", message}}}};
}

}  // namespace aifnav::bridge
