#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "aifnav/agent/agent.hpp"
#include "aifnav/gridworld/environment.hpp"

namespace aifnav::bridge {

inline constexpr const char* kSnapshotSchema = "aifnav.snapshot/1";
inline constexpr const char* kSessionSchema = "aifnav.session/1";
inline constexpr const char* kEnvironmentsSchema = "aifnav.environments/1";
inline constexpr const char* kErrorSchema = "aifnav.error/1";

// Session-level options carried next to the agent configuration.
struct SessionOptions {
    AgentConfig agent;
    std::size_t step_cap = 1000;
    // Utility weight applied by SetGoal interventions without their own weight.
    double goal_weight = 2.0;
    int interval_ms = 250;

    void validate() const;
};

// Unknown keys and out-of-range values throw std::invalid_argument.
SessionOptions options_from_json(const nlohmann::json& doc);
nlohmann::json options_to_json(const SessionOptions& options);

struct InterventionRequest {
    Intervention intervention;
    std::optional<double> weight;  // SetGoal only
};

InterventionRequest intervention_from_json(const nlohmann::json& doc);
nlohmann::json intervention_to_json(const Intervention& intervention);

nlohmann::json environment_summary(const Layout& layout);

struct SnapshotContext {
    std::string session;
    std::uint64_t sequence = 0;
    std::string run_mode;  // paused | stepping | running
    bool finished = false;
    std::string event;     // created | step | intervention
    std::string description;
};

nlohmann::json snapshot_document(const SnapshotContext& ctx, const Environment& env, const Agent& agent);

nlohmann::json error_document(const std::string& code, const std::string& message);

}  // namespace aifnav::bridge
