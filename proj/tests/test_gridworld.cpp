#include <gtest/gtest.h>

#include "aifnav/gridworld/environment.hpp"

using namespace aifnav;

namespace {

const char* kCorridor = R"({"name": "corridor", "start": [0, 0], "colours": [[0, 1, 2]],
  "doors": [[[0, 0], [0, 1]], [[0, 1], [0, 2]]]})";

std::string with(const std::string& colours, const std::string& doors, const std::string& start = "[0, 0]") {
    return R"({"name": "t", "start": )" + start + R"(, "colours": )" + colours + R"(, "doors": )" + doors + "}";
}

}  // namespace

TEST(Layout, BundledFilesAreCanonical) {
    const auto names = bundled_layout_names();
    EXPECT_EQ(names.size(), 8u);
    for (const auto& name : names) {
        SCOPED_TRACE(name);
        const char* text = bundled_layout_text(name);
        ASSERT_NE(text, nullptr);
        const Layout l = load_environment(name);
        EXPECT_EQ(l.name, name);
        EXPECT_EQ(layout_to_text(l), std::string(text));
        EXPECT_EQ(parse_layout(layout_to_text(l)), l);
        EXPECT_TRUE(l.oracle_coverage.has_value());
    }
    EXPECT_EQ(bundled_layout_text("5x5"), nullptr);
    EXPECT_THROW(load_environment("5x5"), std::invalid_argument);
}

TEST(Layout, RoomsAndDoors) {
    const Layout l = load_environment("T_maze");
    EXPECT_EQ(l.rows(), 4);
    EXPECT_EQ(l.cols(), 5);
    EXPECT_EQ(l.rooms().size(), 8u);
    EXPECT_FALSE(l.is_room({1, 0}));
    EXPECT_FALSE(l.is_room({-1, 0}));
    EXPECT_THROW(l.colour({1, 0}), std::out_of_range);
    EXPECT_TRUE(l.has_door({0, 2}, {1, 2}));
    EXPECT_TRUE(l.has_door({1, 2}, {0, 2}));
    EXPECT_FALSE(l.has_door({0, 0}, {1, 0}));
    EXPECT_EQ(l.room_index(l.start), 7u);
    EXPECT_EQ(make_door({1, 1}, {0, 1}), (Door{{0, 1}, {1, 1}}));
}

TEST(Layout, ValidationRejectsMalformedDocuments) {
    EXPECT_NO_THROW(parse_layout(kCorridor));
    EXPECT_THROW(parse_layout("{"), std::invalid_argument);
    EXPECT_THROW(parse_layout(R"({"name": "t"})"), std::invalid_argument);
    EXPECT_THROW(parse_layout(with("[[0, 1], [2]]", "[]")), std::invalid_argument);
    EXPECT_THROW(parse_layout(with("[[-1, -1]]", "[]")), std::invalid_argument);
    EXPECT_THROW(parse_layout(with("[[0, -1]]", "[]", "[0, 1]")), std::invalid_argument);
    EXPECT_THROW(parse_layout(with("[[0, -1]]", "[[[0, 0], [0, 1]]]")), std::invalid_argument);
    EXPECT_THROW(parse_layout(with("[[0, 1, 2]]", "[[[0, 0], [0, 2]]]")), std::invalid_argument);
    EXPECT_THROW(parse_layout(with("[[0, 1]]", "[[[0, 0], [0, 1]], [[0, 1], [0, 0]]]")), std::invalid_argument);
    EXPECT_THROW(parse_layout(with("[[0, 1]]", "[[[0, 0]]]")), std::invalid_argument);
    const std::string bad_block =
        R"({"name": "t", "start": [0, 0], "colours": [[0, 1], [2, 3]], "doors": [[[0, 0], [0, 1]]],
            "block_points": {"A": [[0, 0], [1, 0]]}})";
    EXPECT_THROW(parse_layout(bad_block), std::invalid_argument);
}

TEST(Environment, ObservationIsColourAndContactFlags) {
    Environment env(parse_layout(kCorridor));
    auto o = env.observe();
    EXPECT_EQ(o.colour, 0);
    EXPECT_EQ(o.flags, (CollisionFlags{true, true, true, false}));
    o = env.step(Action::Left);
    EXPECT_EQ(env.state().agent, (RoomCoord{0, 0}));
    o = env.step(Action::Right);
    EXPECT_EQ(o.colour, 1);
    EXPECT_EQ(o.flags, (CollisionFlags{true, true, false, false}));
    o = env.step(Action::Stay);
    EXPECT_EQ(o.colour, 1);
}

TEST(Environment, InterventionsChangeTheWorld) {
    Environment env(parse_layout(kCorridor));
    const Door d{{0, 0}, {0, 1}};
    env.apply(BlockDoor{d});
    EXPECT_FALSE(env.passable({0, 0}, Action::Right));
    EXPECT_FALSE(env.passable({0, 1}, Action::Left));
    EXPECT_TRUE(env.observe().flags[index_of(Action::Right)]);
    env.step(Action::Right);
    EXPECT_EQ(env.state().agent, (RoomCoord{0, 0}));
    env.apply(UnblockDoor{{{0, 1}, {0, 0}}});
    EXPECT_TRUE(env.passable({0, 0}, Action::Right));

    env.apply(KidnapTo{{0, 2}});
    EXPECT_EQ(env.observe().colour, 2);
    env.apply(SetGoal{1});
    EXPECT_EQ(env.state().goal_colour, 1);
    env.apply(ClearGoal{});
    EXPECT_FALSE(env.state().goal_colour);

    EXPECT_THROW(env.apply(BlockDoor{{{0, 0}, {0, 2}}}), std::invalid_argument);
    EXPECT_THROW(env.apply(UnblockDoor{{{0, 0}, {1, 0}}}), std::invalid_argument);
    EXPECT_THROW(env.apply(KidnapTo{{3, 3}}), std::invalid_argument);
    EXPECT_THROW(env.apply(SetGoal{42}), std::invalid_argument);
    EXPECT_EQ(env.state().agent, (RoomCoord{0, 2}));

    EXPECT_EQ(describe(KidnapTo{{3, 0}}), "KidnapTo (3,0)");
    EXPECT_EQ(describe(BlockDoor{d}), "BlockDoor (0,0)-(0,1)");
}

TEST(Environment, GoalColourComesFromTheLayout) {
    Environment env(load_environment("T_maze_alias"));
    EXPECT_EQ(env.state().goal_colour, 9);
    EXPECT_EQ(env.state().agent, (RoomCoord{3, 2}));
}

TEST(GroundTruth, IsOneHotOverDoors) {
    for (const auto& name : bundled_layout_names()) {
        const Layout l = load_environment(name);
        const GroundTruth gt = ground_truth_transitions(l);
        std::size_t moves = 0;
        for (std::size_t i = 0; i < gt.rooms.size(); ++i) {
            for (Action a : kAllActions) {
                double total = 0.0;
                for (std::size_t j = 0; j < gt.rooms.size(); ++j) total += gt.at(j, i, a);
                EXPECT_EQ(total, 1.0);
                const std::size_t j = gt.next[index_of(a)][i];
                if (j != i) {
                    ++moves;
                    EXPECT_TRUE(l.has_door(gt.rooms[i], gt.rooms[j]));
                    EXPECT_EQ(gt.next[index_of(inverse(a))][j], i);
                }
            }
            EXPECT_EQ(gt.next[index_of(Action::Stay)][i], i);
        }
        EXPECT_EQ(moves, 2 * l.doors.size()) << name;
    }
}
