#include "aifnav/gridworld/environment.hpp"

#include <stdexcept>

namespace aifnav {
namespace {

std::string coord(RoomCoord r) { return "(" + std::to_string(r.row) + "," + std::to_string(r.col) + ")"; }

}  // namespace

std::string describe(const Intervention& i) {
    struct Visitor {
        std::string operator()(const BlockDoor& b) const { return "BlockDoor " + coord(b.door.a) + "-" + coord(b.door.b); }
        std::string operator()(const UnblockDoor& b) const {
            return "UnblockDoor " + coord(b.door.a) + "-" + coord(b.door.b);
        }
        std::string operator()(const KidnapTo& k) const { return "KidnapTo " + coord(k.room); }
        std::string operator()(const SetGoal& g) const { return "SetGoal " + std::to_string(g.colour); }
        std::string operator()(const ClearGoal&) const { return "ClearGoal"; }
    };
    return std::visit(Visitor{}, i);
}

Environment::Environment(Layout layout) : layout_(std::move(layout)) {
    validate_layout(layout_);
    state_.agent = layout_.start;
    state_.goal_colour = layout_.goal_colour;
}

bool Environment::passable(RoomCoord from, Action a) const {
    if (a == Action::Stay) return true;
    const RoomCoord to = moved(from, a);
    if (!layout_.has_door(from, to)) return false;
    return state_.blocked.count(make_door(from, to)) == 0;
}

Observation Environment::observe() const {
    Observation o;
    o.colour = layout_.colour(state_.agent);
    for (Action a : kMoves) o.flags[index_of(a)] = !passable(state_.agent, a);
    return o;
}

Observation Environment::step(Action a) {
    if (a != Action::Stay && passable(state_.agent, a)) state_.agent = moved(state_.agent, a);
    return observe();
}

void Environment::apply(const Intervention& intervention) {
    struct Visitor {
        Environment& env;
        void operator()(const BlockDoor& b) const {
            if (!env.layout_.has_door(b.door.a, b.door.b)) throw std::invalid_argument("intervention: not a door");
            env.state_.blocked.insert(make_door(b.door.a, b.door.b));
        }
        void operator()(const UnblockDoor& b) const {
            if (!env.layout_.has_door(b.door.a, b.door.b)) throw std::invalid_argument("intervention: not a door");
            env.state_.blocked.erase(make_door(b.door.a, b.door.b));
        }
        void operator()(const KidnapTo& k) const {
            if (!env.layout_.is_room(k.room)) throw std::invalid_argument("intervention: not a room");
            env.state_.agent = k.room;
        }
        void operator()(const SetGoal& g) const {
            bool present = false;
            for (const auto& r : env.layout_.rooms()) present = present || env.layout_.colour(r) == g.colour;
            if (!present) throw std::invalid_argument("intervention: colour not present in layout");
            env.state_.goal_colour = g.colour;
        }
        void operator()(const ClearGoal&) const { env.state_.goal_colour.reset(); }
    };
    std::visit(Visitor{*this}, intervention);
}

GroundTruth ground_truth_transitions(const Layout& layout) {
    GroundTruth gt;
    gt.rooms = layout.rooms();
    for (Action a : kAllActions) {
        auto& next = gt.next[index_of(a)];
        next.resize(gt.rooms.size());
        for (std::size_t i = 0; i < gt.rooms.size(); ++i) {
            const RoomCoord to = moved(gt.rooms[i], a);
            next[i] = (a != Action::Stay && layout.has_door(gt.rooms[i], to)) ? *layout.room_index(to) : i;
        }
    }
    return gt;
}

}  // namespace aifnav
