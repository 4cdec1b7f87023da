#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <optional>
#include <string_view>

namespace aifnav {

enum class Action : int { Up = 0, Down = 1, Left = 2, Right = 3, Stay = 4 };

inline constexpr std::size_t kNumActions = 5;
inline constexpr std::size_t kNumMoves = 4;
inline constexpr std::array<Action, kNumActions> kAllActions{Action::Up, Action::Down, Action::Left,
                                                             Action::Right, Action::Stay};
inline constexpr std::array<Action, kNumMoves> kMoves{Action::Up, Action::Down, Action::Left, Action::Right};

constexpr std::size_t index_of(Action a) { return static_cast<std::size_t>(a); }

constexpr Action inverse(Action a) {
    switch (a) {
        case Action::Up: return Action::Down;
        case Action::Down: return Action::Up;
        case Action::Left: return Action::Right;
        case Action::Right: return Action::Left;
        default: return Action::Stay;
    }
}

std::string_view to_string(Action a);
std::optional<Action> parse_action(std::string_view name);

// Lattice position in room units; row grows downwards.
struct Pose {
    int row = 0;
    int col = 0;
    auto operator<=>(const Pose&) const = default;
};

constexpr Pose displaced(Pose p, Action a) {
    switch (a) {
        case Action::Up: return {p.row - 1, p.col};
        case Action::Down: return {p.row + 1, p.col};
        case Action::Left: return {p.row, p.col - 1};
        case Action::Right: return {p.row, p.col + 1};
        default: return p;
    }
}

// Per-direction contact flags for the occupied room, indexed by index_of(move).
using CollisionFlags = std::array<bool, kNumMoves>;

// What the environment hands the agent each step, and nothing else.
struct Observation {
    int colour = 0;
    CollisionFlags flags{};
    bool operator==(const Observation&) const = default;
};

}  // namespace aifnav
