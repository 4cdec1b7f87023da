#include <gtest/gtest.h>

#include "aifnav/agent/agent.hpp"
#include "aifnav/harness/episode.hpp"

using namespace aifnav;

namespace {

AgentConfig config_with_seed(std::uint64_t seed) {
    AgentConfig cfg;
    cfg.planner.seed = seed;
    cfg.planner.lookahead = 4;
    return cfg;
}

// Field-by-field, exact.
void expect_identical(const StepRecord& a, const StepRecord& b) {
    EXPECT_EQ(a.step, b.step);
    EXPECT_EQ(a.action, b.action);
    EXPECT_EQ(a.colour, b.colour);
    EXPECT_EQ(a.flags, b.flags);
    EXPECT_EQ(a.map_pose, b.map_pose);
    EXPECT_EQ(a.posterior, b.posterior);
    EXPECT_EQ(a.confidence, b.confidence);
    EXPECT_EQ(a.vfe, b.vfe);
    EXPECT_EQ(a.policy_id, b.policy_id);
    EXPECT_EQ(a.policy, b.policy);
    EXPECT_EQ(a.mode, b.mode);
    EXPECT_EQ(a.learned, b.learned);
    EXPECT_EQ(a.idle, b.idle);
}

void explore_until_complete(Episode& ep, std::size_t cap) {
    for (std::size_t t = 0; t < cap && !map_complete(ep.agent(), ep.env().layout()); ++t) ep.step();
    ASSERT_TRUE(map_complete(ep.agent(), ep.env().layout()));
}

}  // namespace

TEST(Agent, StartsFromOneStateAndImaginesNeighbours) {
    Environment env(load_environment("3x3"));
    const Agent agent(config_with_seed(0), env.observe());
    EXPECT_EQ(agent.mode(), LocalisationMode::Confident);
    EXPECT_EQ(agent.map_pose(), (Pose{0, 0}));
    EXPECT_EQ(agent.belief().confidence, 1.0);
    EXPECT_EQ(agent.colour_of_observation(), std::vector<int>{7});
    // The start room of 3x3 opens up, left and right: one imagined state each.
    EXPECT_EQ(agent.model().num_poses(), 4u);
    EXPECT_EQ(agent.model().num_states(), 4u);
    EXPECT_TRUE(agent.records().empty());
}

TEST(Agent, FixedSeedGivesBitIdenticalRecords) {
    Episode a(load_environment("4x4_alias"), config_with_seed(11));
    Episode b(load_environment("4x4_alias"), config_with_seed(11));
    for (int t = 0; t < 80; ++t) {
        a.step();
        b.step();
    }
    ASSERT_EQ(a.agent().records().size(), b.agent().records().size());
    for (std::size_t i = 0; i < a.agent().records().size(); ++i) {
        SCOPED_TRACE(i);
        expect_identical(a.agent().records()[i], b.agent().records()[i]);
    }
    EXPECT_EQ(a.agent().model(), b.agent().model());
}

TEST(Agent, DependsOnObservationsOnly) {
    // Record the observation stream of an episode, then replay it to a fresh
    // agent through a bare callback that knows nothing about the layout.
    Episode ep(load_environment("3x3_alias"), config_with_seed(5));
    std::vector<Observation> stream;
    Agent::Environment tap = [&](Action a) {
        Observation o = ep.env().step(a);
        stream.push_back(o);
        return o;
    };
    Agent first(config_with_seed(5), ep.env().observe());
    const Observation initial = Environment(load_environment("3x3_alias")).observe();
    for (int t = 0; t < 40; ++t) first.step(tap);

    std::size_t next = 0;
    Agent replay(config_with_seed(5), initial);
    Agent::Environment feed = [&](Action) { return stream.at(next++); };
    for (int t = 0; t < 40; ++t) replay.step(feed);
    for (std::size_t i = 0; i < first.records().size(); ++i) expect_identical(first.records()[i], replay.records()[i]);
}

TEST(Agent, RecordsRoundTripThroughJson) {
    Episode ep(load_environment("T_maze"), config_with_seed(2));
    for (int t = 0; t < 10; ++t) ep.step();
    ep.intervene(KidnapTo{{0, 0}});
    for (const auto& r : ep.agent().records()) {
        const auto j = record_to_json(r);
        expect_identical(record_from_json(j), r);
        EXPECT_EQ(record_to_json(record_from_json(j)).dump(), j.dump());
    }
    EXPECT_TRUE(ep.agent().records().back().idle);
}

TEST(Agent, KidnapIntoUniqueColourRelocalises) {
    Episode ep(load_environment("3x3"), config_with_seed(3));
    explore_until_complete(ep, 200);
    const RoomCoord target = ep.env().state().agent == RoomCoord{0, 0} ? RoomCoord{2, 2} : RoomCoord{0, 0};
    ep.intervene(KidnapTo{target});
    const auto& rec = ep.agent().records().back();
    EXPECT_EQ(ep.agent().mode(), LocalisationMode::Confident);
    const RoomCoord start = ep.env().layout().start;
    EXPECT_EQ(ep.agent().map_pose(), (Pose{target.row - start.row, target.col - start.col}));
    EXPECT_GE(rec.confidence, 0.7);
}

TEST(Agent, KidnapIntoAliasedColourIsLost) {
    Episode ep(load_environment("3x3_alias"), config_with_seed(3));
    explore_until_complete(ep, 300);
    // Colours 0 and 2 each sit in two corners.
    const RoomCoord here = ep.env().state().agent;
    RoomCoord target{0, 0};
    for (RoomCoord c : {RoomCoord{0, 0}, RoomCoord{0, 2}, RoomCoord{2, 0}, RoomCoord{2, 2}})
        if (ep.env().layout().colour(c) != ep.env().layout().colour(here)) target = c;
    ep.intervene(KidnapTo{target});
    EXPECT_EQ(ep.agent().mode(), LocalisationMode::Lost);
    EXPECT_LT(ep.agent().belief().confidence, 0.7);
    EXPECT_EQ(ep.agent().records().back().mode, LocalisationMode::Lost);
    // Lost steps do not write to the model.
    const GenerativeModel before = ep.agent().model();
    const auto& rec = ep.step();
    if (rec.mode == LocalisationMode::Lost) {
        EXPECT_FALSE(rec.learned);
        EXPECT_EQ(ep.agent().model(), before);
    }
}

TEST(Agent, PreferenceAndConfigValidation) {
    Environment env(load_environment("3x3"));
    Agent agent(config_with_seed(0), env.observe());
    EXPECT_EQ(agent.snapshot().utility_weight, 0.0);
    agent.set_preference(7, 2.0);
    EXPECT_EQ(agent.config().preference.goal_colour, 7);
    const auto snap = agent.snapshot();
    EXPECT_EQ(snap.utility_weight, 2.0);
    EXPECT_GT(snap.log_preference[0], std::log(0.5));
    EXPECT_THROW(agent.set_preference(7, -1.0), std::invalid_argument);
    agent.set_preference(std::nullopt, 0.0);
    EXPECT_FALSE(agent.config().preference.goal_colour);

    auto bad = config_with_seed(0);
    bad.confidence_gate = 0.0;
    EXPECT_THROW(Agent(bad, env.observe()), std::invalid_argument);
    bad = config_with_seed(0);
    bad.planner.gamma = -1.0;
    EXPECT_THROW(Agent(bad, env.observe()), std::invalid_argument);
    bad = config_with_seed(0);
    bad.preference.collision_epsilon = 1.0;
    EXPECT_THROW(Agent(bad, env.observe()), std::invalid_argument);
}

TEST(Agent, WallBumpsLeaveThePoseAndLearnNoMove) {
    Episode ep(load_environment("T_maze"), config_with_seed(0));
    // Stem bottom: only Up is open.
    const auto before = ep.agent().map_pose();
    const auto& rec = ep.step_with(Action::Down);
    EXPECT_EQ(rec.action, Action::Down);
    EXPECT_EQ(ep.agent().map_pose(), before);
    EXPECT_EQ(ep.env().state().agent, (RoomCoord{3, 2}));
    const auto s = ep.agent().belief().states.argmax();
    EXPECT_GT(ep.agent().model().transition_prob(s, s, Action::Down), 0.5);
    ep.step_with(Action::Up);
    EXPECT_EQ(ep.agent().map_pose(), (Pose{-1, 0}));
}

TEST(Agent, ExportMapListsStatesAndEdges) {
    Episode ep(load_environment("3x3"), config_with_seed(1));
    for (int t = 0; t < 10; ++t) ep.step();
    const auto map = ep.agent().export_map();
    EXPECT_EQ(map["schema"], "aifnav.map/1");
    EXPECT_EQ(map["nodes"].size(), ep.agent().model().num_states());
    EXPECT_EQ(map["edges"].size(), 4 * ep.agent().model().num_states());
}
