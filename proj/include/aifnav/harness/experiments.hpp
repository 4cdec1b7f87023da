#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aifnav/agent/agent.hpp"
#include "aifnav/gridworld/environment.hpp"
#include "aifnav/gridworld/layout.hpp"
#include "aifnav/harness/episode.hpp"

namespace aifnav {

enum class ExperimentKind { Exploration, Goal, Tolman, Remap };

std::string_view to_string(ExperimentKind k);
ExperimentKind parse_experiment(std::string_view name);

// Applied before the step with this index (0 = before the first step).
struct ScheduledIntervention {
    std::size_t step = 0;
    Intervention intervention;
};

struct ExperimentSpec {
    ExperimentKind kind = ExperimentKind::Exploration;
    std::string environment = "3x3";
    std::vector<std::uint64_t> seeds{0};
    AgentConfig agent;
    std::size_t explore_cap = 1000;
    std::size_t goal_cap = 500;
    double completion_threshold = 0.6;
    // Utility weight once a goal is set.
    double goal_weight = 2.0;
    // Exploration: also run the random-action agent on each seed.
    bool with_baseline = true;
    // Goal: explore first (true) or start naive.
    bool with_prior = true;
    // Tolman.
    int runs_per_phase = 12;
    std::size_t run_length = 20;
    // Remap: seal the short route after the first move; reopen once the goal
    // is reached and keep going for reopen_steps.
    bool seal = true;
    std::size_t reopen_steps = 0;
    // Exploration and goal runs only; goal runs count steps from release.
    std::vector<ScheduledIntervention> schedule;
    // Goal/Remap release rooms, one drawn per seed. Empty: any room without
    // the goal colour (goal) or the bottom-left room (remap).
    std::vector<RoomCoord> release_rooms;
    // JSONL step logs and per-decision traces go here when set.
    std::optional<std::string> log_dir;
};

struct SeedResult {
    std::uint64_t seed = 0;
    // Exploration: steps to a complete map. Goal/Remap: steps before the
    // agent chose Stay at the goal. Empty when the cap was hit.
    std::optional<std::size_t> steps;
    std::optional<std::size_t> steps_visit_all;
    std::optional<std::size_t> baseline_steps;
    // Goal/Remap reference: shortest path from the release room.
    std::optional<std::size_t> shortest;
    double seconds = 0.0;
    nlohmann::json detail = nlohmann::json::object();
};

struct RunResult {
    ExperimentKind kind = ExperimentKind::Exploration;
    std::string environment;
    std::size_t oracle = 0;
    std::vector<SeedResult> seeds;
    // Tolman: phase -> counts of goal completions per route (index 0 =
    // unclassified, 1..3 = routes).
    std::vector<std::array<int, 4>> route_counts;
    double seconds = 0.0;
};

// Chooses each action of a baseline explorer; the agent still learns.
using ActionSource = std::function<Action(const Episode&)>;

// Steps of a uniform random walk over the four moves.
ActionSource random_walk(std::uint64_t seed);

// Throws std::invalid_argument: empty seeds, unknown environment, schedule
// entries that do not fit the layout.
void validate(const ExperimentSpec& spec);

RunResult run_experiment(const ExperimentSpec& spec);
RunResult run_exploration(const ExperimentSpec& spec);
RunResult run_goal(const ExperimentSpec& spec);
RunResult run_tolman(const ExperimentSpec& spec);
RunResult run_remap(const ExperimentSpec& spec);

nlohmann::json result_to_json(const RunResult& r);
// One row per seed.
std::string result_to_csv(const RunResult& r);

}  // namespace aifnav
