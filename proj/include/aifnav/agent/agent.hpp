#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "aifnav/core/generative_model.hpp"
#include "aifnav/core/inference.hpp"
#include "aifnav/core/learning.hpp"
#include "aifnav/planner/planner.hpp"
#include "aifnav/planner/preference.hpp"

namespace aifnav {

enum class LocalisationMode { Confident, Lost };

std::string_view to_string(LocalisationMode m);

struct AgentConfig {
    ModelConfig model;
    PlannerConfig planner;
    PreferenceModel preference;
    LearningRateTable rates;
    double confidence_gate = 0.7;
    // Keep the full scored policy set of the last decision (traces, bridge).
    bool keep_decisions = true;

    void validate() const;
};

struct StepRecord {
    std::size_t step = 0;
    Action action = Action::Stay;
    int colour = 0;
    CollisionFlags flags{};
    std::optional<Pose> map_pose;
    std::vector<double> posterior;
    double confidence = 0.0;
    double vfe = 0.0;
    std::optional<std::size_t> policy_id;
    std::string policy;
    // Mode under which the observation was processed.
    LocalisationMode mode = LocalisationMode::Confident;
    bool learned = false;
    // Re-perception after an intervention; not an action of the agent.
    bool idle = false;
};

nlohmann::json record_to_json(const StepRecord& r);
StepRecord record_from_json(const nlohmann::json& j);

class Agent {
public:
    using Environment = std::function<Observation(Action)>;

    Agent(AgentConfig config, const Observation& first);

    // Scores policies from the current belief and samples one.
    Decision plan();

    // Feeds the outcome of `action`. Returns the appended record.
    const StepRecord& observe(Action action, const Observation& obs, const Decision* decision = nullptr,
                              bool idle = false);

    // plan, act through env, observe.
    const StepRecord& step(const Environment& env);

    // Executes an externally chosen action (baselines, replays of actions).
    const StepRecord& act(Action action, const Environment& env);

    // Re-perceives the current room after an outside change (kidnap, door).
    const StepRecord& perceive_idle(const Observation& obs);

    void set_preference(std::optional<int> colour, double weight);

    const GenerativeModel& model() const { return model_; }
    const BeliefState& belief() const { return belief_; }
    LocalisationMode mode() const { return mode_; }
    // Confident-mode pose; in Lost mode the last anchored pose.
    std::size_t pose_index() const { return pose_; }
    std::optional<Pose> map_pose() const;
    const CollisionFlags& flags() const { return flags_; }
    const std::vector<StepRecord>& records() const { return records_; }
    const std::optional<Decision>& last_decision() const { return last_decision_; }
    const std::vector<int>& colour_of_observation() const { return colours_; }
    std::optional<std::size_t> observation_index(int colour) const;
    const AgentConfig& config() const { return cfg_; }
    std::size_t steps_taken() const { return steps_; }

    ModelSnapshot snapshot() const;

    // Node/edge list of the learned map.
    nlohmann::json export_map() const;

private:
    std::size_t register_colour(int colour);
    void imagine_frontier();
    void grow_belief();
    void learn_transition(const Categorical& q_prev, Action action, bool collided, std::size_t prev_pose);

    AgentConfig cfg_;
    GenerativeModel model_;
    Planner planner_;
    std::mt19937_64 rng_;
    BeliefState belief_;
    LocalisationMode mode_ = LocalisationMode::Confident;
    std::size_t pose_ = 0;
    CollisionFlags flags_{};
    std::vector<int> colours_;
    std::map<int, std::size_t> vocabulary_;
    std::vector<StepRecord> records_;
    std::optional<Decision> last_decision_;
    std::size_t steps_ = 0;
};

}  // namespace aifnav
