#include "aifnav/core/types.hpp"

namespace aifnav {

std::string_view to_string(Action a) {
    switch (a) {
        case Action::Up: return "Up";
        case Action::Down: return "Down";
        case Action::Left: return "Left";
        case Action::Right: return "Right";
        case Action::Stay: return "Stay";
    }
    return "?";
}

std::optional<Action> parse_action(std::string_view name) {
    for (Action a : kAllActions)
        if (to_string(a) == name) return a;
    return std::nullopt;
}

}  // namespace aifnav
