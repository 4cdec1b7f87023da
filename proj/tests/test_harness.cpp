#include <filesystem>
#include <fstream>

#include <gtest/gtest.h>

#include "aifnav/harness/experiments.hpp"
#include "aifnav/harness/oracle.hpp"

using namespace aifnav;
namespace fs = std::filesystem;

namespace {

Layout corridor(int length, int start_col) {
    Layout l;
    l.name = "corridor";
    l.colours = {std::vector<int>(static_cast<std::size_t>(length))};
    for (int c = 0; c < length; ++c) l.colours[0][static_cast<std::size_t>(c)] = c;
    for (int c = 0; c + 1 < length; ++c) l.doors.push_back(make_door({0, c}, {0, c + 1}));
    l.start = {0, start_col};
    return l;
}

std::string write_layout(const Layout& l) {
    const auto path = fs::temp_directory_path() / ("aifnav_test_" + l.name + ".json");
    std::ofstream(path) << layout_to_text(l);
    return path.string();
}

}  // namespace

TEST(Oracle, SmallCases) {
    EXPECT_EQ(oracle_coverage(corridor(1, 0)), 0u);
    EXPECT_EQ(oracle_coverage(corridor(2, 0)), 1u);
    EXPECT_EQ(oracle_coverage(corridor(3, 0)), 2u);
    // From the middle one end must be revisited on the way to the other.
    EXPECT_EQ(oracle_coverage(corridor(3, 1)), 3u);
    EXPECT_EQ(oracle_coverage(corridor(5, 1)), 5u);
}

TEST(Oracle, MatchesRecordedValues) {
    for (const auto& name : bundled_layout_names()) {
        const Layout l = load_environment(name);
        ASSERT_TRUE(l.oracle_coverage) << name;
        EXPECT_EQ(oracle_coverage(l), static_cast<std::size_t>(*l.oracle_coverage)) << name;
    }
}

TEST(Oracle, RejectsLargeLayouts) {
    EXPECT_THROW(oracle_coverage(corridor(25, 0)), std::invalid_argument);
}

TEST(ShortestPath, RespectsSealedDoors) {
    const Layout l = load_environment("donuts");
    const RoomCoord from{3, 0}, to{0, 2};
    EXPECT_EQ(shortest_path(l, from, to), 5u);
    const Door a = l.block_points.at("A");
    EXPECT_EQ(shortest_path(l, from, to, {a}), 9u);
    EXPECT_EQ(shortest_path(l, from, from), 0u);
    const Layout c = corridor(3, 0);
    EXPECT_FALSE(shortest_path(c, {0, 0}, {0, 2}, {make_door({0, 0}, {0, 1})}));
}

TEST(Episode, TwoRoomMapCompletesQuickly) {
    ExperimentSpec spec;
    spec.environment = write_layout(corridor(2, 0));
    spec.seeds = {0, 1, 2, 3, 4};
    const auto r = run_experiment(spec);
    EXPECT_EQ(r.oracle, 1u);
    for (const auto& s : r.seeds) {
        ASSERT_TRUE(s.steps) << s.seed;
        EXPECT_LE(*s.steps, 4u) << s.seed;
        ASSERT_TRUE(s.baseline_steps);
    }
}

TEST(Episode, VisitedRoomsAndGoalStay) {
    Episode ep(load_environment("T_maze"), AgentConfig{});
    EXPECT_EQ(ep.visited().size(), 1u);
    ep.step_with(Action::Up);
    EXPECT_EQ(ep.previous_room(), (RoomCoord{3, 2}));
    EXPECT_EQ(ep.visited().size(), 2u);
    ep.intervene(KidnapTo{{0, 0}});
    EXPECT_EQ(ep.visited().size(), 3u);
    ep.intervene(SetGoal{ep.env().layout().colour({0, 0})}, 3.0);
    EXPECT_EQ(ep.agent().config().preference.utility_weight, 3.0);
    const auto& rec = ep.step_with(Action::Stay);
    EXPECT_TRUE(stayed_at_goal(ep, rec));
    ep.intervene(ClearGoal{});
    EXPECT_FALSE(stayed_at_goal(ep, ep.step_with(Action::Stay)));
    EXPECT_EQ(ep.agent().config().preference.utility_weight, 0.0);
}

TEST(Experiments, CsvIsDeterministic) {
    ExperimentSpec spec;
    spec.environment = "T_maze";
    spec.seeds = {4, 5};
    spec.agent.planner.lookahead = 4;
    const auto a = result_to_csv(run_experiment(spec));
    const auto b = result_to_csv(run_experiment(spec));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.rfind("kind,environment,seed,oracle,steps,steps_visit_all,baseline_steps,shortest\n", 0), 0u);
    const auto j = result_to_json(run_experiment(spec));
    EXPECT_EQ(j["environment"], "T_maze");
    EXPECT_EQ(j["seeds"].size(), 2u);
}

TEST(Experiments, ValidateRejectsBadSpecs) {
    ExperimentSpec spec;
    EXPECT_NO_THROW(validate(spec));
    spec.seeds.clear();
    EXPECT_THROW(validate(spec), std::invalid_argument);
    spec = {};
    spec.environment = "nowhere";
    EXPECT_THROW(validate(spec), std::invalid_argument);
    spec = {};
    spec.schedule.push_back({0, BlockDoor{{{0, 0}, {2, 2}}}});
    EXPECT_THROW(validate(spec), std::invalid_argument);
    spec = {};
    spec.release_rooms.push_back({9, 9});
    EXPECT_THROW(validate(spec), std::invalid_argument);
    spec = {};
    spec.kind = ExperimentKind::Tolman;
    EXPECT_THROW(validate(spec), std::invalid_argument);
    spec.environment = "tolman";
    EXPECT_NO_THROW(validate(spec));
    spec = {};
    spec.kind = ExperimentKind::Remap;
    EXPECT_THROW(validate(spec), std::invalid_argument);
    spec = {};
    spec.agent.planner.lookahead = 0;
    EXPECT_THROW(validate(spec), std::invalid_argument);
    EXPECT_THROW(parse_experiment("sprint"), std::invalid_argument);
    EXPECT_EQ(parse_experiment(to_string(ExperimentKind::Remap)), ExperimentKind::Remap);
}
