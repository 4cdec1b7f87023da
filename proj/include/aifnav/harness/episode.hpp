#pragma once

#include <cstddef>
#include <optional>
#include <set>

#include "aifnav/agent/agent.hpp"
#include "aifnav/gridworld/environment.hpp"

namespace aifnav {

// Learned state standing for each layout room, matched through the anchored
// pose offset from the start room. Rooms without a visited state are empty.
std::vector<std::optional<std::size_t>> match_rooms(const Agent& agent, const Layout& layout);

// Every room has a visited state and every non-self door transition has
// normalised probability >= threshold on the matching pair.
bool map_complete(const Agent& agent, const Layout& layout, double threshold = 0.6);

// An agent coupled to one environment. Interventions that change the world
// are followed by an idle re-perception so the agent sees the new room.
class Episode {
public:
    Episode(Layout layout, AgentConfig config);

    Environment& env() { return env_; }
    const Environment& env() const { return env_; }
    Agent& agent() { return agent_; }
    const Agent& agent() const { return agent_; }

    // Planned step.
    const StepRecord& step();
    // Externally chosen action.
    const StepRecord& step_with(Action a);

    // SetGoal/ClearGoal also set the agent preference with `goal_weight`.
    void intervene(const Intervention& intervention, double goal_weight = 2.0);

    const std::set<RoomCoord>& visited() const { return visited_; }
    // True room before the most recent step.
    RoomCoord previous_room() const { return previous_; }

private:
    Agent::Environment sink();

    Environment env_;
    Agent agent_;
    std::set<RoomCoord> visited_;
    RoomCoord previous_;
};

// Step at which the agent chose Stay in a room with the goal colour.
bool stayed_at_goal(const Episode& e, const StepRecord& rec);

}  // namespace aifnav
