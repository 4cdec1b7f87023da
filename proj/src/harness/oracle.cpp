#include "aifnav/harness/oracle.hpp"

#include <cstdint>
#include <deque>
#include <stdexcept>
#include <vector>

namespace aifnav {
namespace {

std::vector<std::vector<std::size_t>> adjacency(const Layout& layout, const std::set<Door>& sealed) {
    const auto rooms = layout.rooms();
    std::vector<std::vector<std::size_t>> adj(rooms.size());
    for (std::size_t i = 0; i < rooms.size(); ++i)
        for (Action a : kMoves) {
            const RoomCoord to = moved(rooms[i], a);
            if (layout.has_door(rooms[i], to) && sealed.count(make_door(rooms[i], to)) == 0)
                adj[i].push_back(*layout.room_index(to));
        }
    return adj;
}

}  // namespace

std::size_t oracle_coverage(const Layout& layout) {
    const std::size_t n = layout.rooms().size();
    if (n > 24) throw std::invalid_argument("oracle_coverage: too many rooms");
    const auto adj = adjacency(layout, {});
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    const std::size_t start = *layout.room_index(layout.start);
    std::vector<std::int32_t> dist(n << n, -1);
    auto key = [n](std::size_t room, std::uint32_t mask) { return (static_cast<std::size_t>(mask) * n) + room; };
    std::deque<std::pair<std::size_t, std::uint32_t>> queue;
    const std::uint32_t m0 = std::uint32_t{1} << start;
    dist[key(start, m0)] = 0;
    queue.emplace_back(start, m0);
    while (!queue.empty()) {
        const auto [room, mask] = queue.front();
        queue.pop_front();
        const std::int32_t d = dist[key(room, mask)];
        if (mask == full) return static_cast<std::size_t>(d);
        for (std::size_t next : adj[room]) {
            const std::uint32_t m = mask | (std::uint32_t{1} << next);
            if (dist[key(next, m)] >= 0) continue;
            dist[key(next, m)] = d + 1;
            queue.emplace_back(next, m);
        }
    }
    throw std::invalid_argument("oracle_coverage: layout is not connected");
}

std::optional<std::size_t> shortest_path(const Layout& layout, RoomCoord from, RoomCoord to,
                                         const std::set<Door>& sealed) {
    const auto src = layout.room_index(from);
    const auto dst = layout.room_index(to);
    if (!src || !dst) throw std::invalid_argument("shortest_path: not a room");
    const auto adj = adjacency(layout, sealed);
    std::vector<int> dist(adj.size(), -1);
    std::deque<std::size_t> queue{*src};
    dist[*src] = 0;
    while (!queue.empty()) {
        const std::size_t r = queue.front();
        queue.pop_front();
        if (r == *dst) return static_cast<std::size_t>(dist[r]);
        for (std::size_t next : adj[r])
            if (dist[next] < 0) {
                dist[next] = dist[r] + 1;
                queue.push_back(next);
            }
    }
    return std::nullopt;
}

}  // namespace aifnav
