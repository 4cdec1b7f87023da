#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "aifnav/gridworld/layout.hpp"

namespace aifnav {

struct EnvState {
    RoomCoord agent;
    std::set<Door> blocked;
    std::optional<int> goal_colour;
};

struct BlockDoor {
    Door door;
};
struct UnblockDoor {
    Door door;
};
struct KidnapTo {
    RoomCoord room;
};
struct SetGoal {
    int colour;
};
struct ClearGoal {};

using Intervention = std::variant<BlockDoor, UnblockDoor, KidnapTo, SetGoal, ClearGoal>;

std::string describe(const Intervention& i);

// Room-level simulator. Colour plus contact flags are the only output.
class Environment {
public:
    explicit Environment(Layout layout);

    const Layout& layout() const { return layout_; }
    const EnvState& state() const { return state_; }

    // Door present and not sealed.
    bool passable(RoomCoord from, Action a) const;

    Observation observe() const;
    Observation step(Action a);

    // Throws std::invalid_argument for an edge, room or colour not in the layout.
    void apply(const Intervention& intervention);

private:
    Layout layout_;
    EnvState state_;
};

// One-hot [next-room, room, action] over layout.rooms(), doors only.
struct GroundTruth {
    std::vector<RoomCoord> rooms;
    std::array<std::vector<std::size_t>, kNumActions> next;  // next[a][room]

    double at(std::size_t next_room, std::size_t room, Action a) const {
        return next[index_of(a)][room] == next_room ? 1.0 : 0.0;
    }
};

GroundTruth ground_truth_transitions(const Layout& layout);

}  // namespace aifnav
