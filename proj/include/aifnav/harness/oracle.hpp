#pragma once

#include <cstddef>
#include <optional>
#include <set>

#include "aifnav/gridworld/layout.hpp"

namespace aifnav {

// Fewest moves that visit every room from the layout start (BFS over
// room x visited-set). Throws std::invalid_argument above 24 rooms.
std::size_t oracle_coverage(const Layout& layout);

// Fewest moves between two rooms avoiding `sealed` doors; nullopt if cut off.
std::optional<std::size_t> shortest_path(const Layout& layout, RoomCoord from, RoomCoord to,
                                         const std::set<Door>& sealed = {});

}  // namespace aifnav
