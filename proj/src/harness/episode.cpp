#include "aifnav/harness/episode.hpp"

namespace aifnav {
std::vector<std::optional<std::size_t>> match_rooms(const Agent& agent, const Layout& layout) {
    const auto& model = agent.model();
    const auto rooms = layout.rooms();
    std::vector<std::optional<std::size_t>> out(rooms.size());
    for (std::size_t i = 0; i < rooms.size(); ++i) {
        const Pose offset{rooms[i].row - layout.start.row, rooms[i].col - layout.start.col};
        const auto p = model.pose_graph().find(offset);
        if (!p) continue;
        const auto s = model.anchored_state(*p);
        if (s && model.observed(*s)) out[i] = s;
    }
    return out;
}

bool map_complete(const Agent& agent, const Layout& layout, double threshold) {
    const auto matched = match_rooms(agent, layout);
    for (const auto& s : matched)
        if (!s) return false;
    const GroundTruth gt = ground_truth_transitions(layout);
    for (Action a : kMoves)
        for (std::size_t i = 0; i < gt.rooms.size(); ++i) {
            const std::size_t j = gt.next[index_of(a)][i];
            if (j == i) continue;
            if (agent.model().transition_prob(*matched[j], *matched[i], a) < threshold) return false;
        }
    return true;
}

Episode::Episode(Layout layout, AgentConfig config)
    : env_(std::move(layout)), agent_(std::move(config), env_.observe()), previous_(env_.state().agent) {
    visited_.insert(env_.state().agent);
}

Agent::Environment Episode::sink() {
    return [this](Action a) {
        previous_ = env_.state().agent;
        Observation o = env_.step(a);
        visited_.insert(env_.state().agent);
        return o;
    };
}

const StepRecord& Episode::step() { return agent_.step(sink()); }

const StepRecord& Episode::step_with(Action a) { return agent_.act(a, sink()); }

void Episode::intervene(const Intervention& intervention, double goal_weight) {
    env_.apply(intervention);
    if (const auto* g = std::get_if<SetGoal>(&intervention)) {
        agent_.set_preference(g->colour, goal_weight);
        return;
    }
    if (std::holds_alternative<ClearGoal>(intervention)) {
        agent_.set_preference(std::nullopt, 0.0);
        return;
    }
    previous_ = env_.state().agent;
    visited_.insert(env_.state().agent);
    agent_.perceive_idle(env_.observe());
}

bool stayed_at_goal(const Episode& e, const StepRecord& rec) {
    const auto& goal = e.env().state().goal_colour;
    return rec.action == Action::Stay && !rec.idle && goal &&
           e.env().layout().colour(e.env().state().agent) == *goal;
}

}  // namespace aifnav
