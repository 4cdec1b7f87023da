#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aifnav/core/types.hpp"

namespace aifnav {

struct RoomCoord {
    int row = 0;
    int col = 0;
    auto operator<=>(const RoomCoord&) const = default;
};

RoomCoord moved(RoomCoord r, Action a);

// Undirected; stored with a < b.
struct Door {
    RoomCoord a;
    RoomCoord b;
    auto operator<=>(const Door&) const = default;
};

Door make_door(RoomCoord x, RoomCoord y);

struct Layout {
    std::string name;
    std::string notes;
    std::vector<std::vector<int>> colours;  // negative = no room
    std::vector<Door> doors;                // sorted, unique
    RoomCoord start;
    std::map<std::string, Door> block_points;
    std::optional<int> goal_colour;
    std::optional<int> oracle_coverage;  // recorded value, checked by tests

    int rows() const { return static_cast<int>(colours.size()); }
    int cols() const { return colours.empty() ? 0 : static_cast<int>(colours.front().size()); }
    bool is_room(RoomCoord r) const;
    int colour(RoomCoord r) const;
    bool has_door(RoomCoord x, RoomCoord y) const;

    // Rooms in row-major order; indices below refer to this order.
    std::vector<RoomCoord> rooms() const;
    std::optional<std::size_t> room_index(RoomCoord r) const;
};

// Throws std::invalid_argument on schema violations.
Layout parse_layout(const std::string& text);
void validate_layout(const Layout& layout);
// Canonical text; parse_layout(layout_to_text(x)) == x and the bundled files
// are stored in this form.
std::string layout_to_text(const Layout& layout);

std::vector<std::string> bundled_layout_names();
const char* bundled_layout_text(const std::string& name);
// Bundled name, or a path to a layout document.
Layout load_environment(const std::string& name_or_path);

bool operator==(const Layout& x, const Layout& y);

}  // namespace aifnav
