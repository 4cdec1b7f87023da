#include "aifnav/core/pose_graph.hpp"

#include <stdexcept>

namespace aifnav {

PoseGraph::AddResult PoseGraph::add_pose(Pose p) {
    if (auto it = index_.find(p); it != index_.end()) return {it->second, false};
    const std::size_t idx = poses_.size();
    poses_.push_back(p);
    index_.emplace(p, idx);
    kinds_.push_back({EdgeKind::Unknown, EdgeKind::Unknown, EdgeKind::Unknown, EdgeKind::Unknown});
    for (Action a : kMoves) {
        auto n = find(displaced(p, a));
        if (!n) continue;
        if (kinds_[*n][index_of(inverse(a))] == EdgeKind::Blocked) kinds_[idx][index_of(a)] = EdgeKind::Blocked;
    }
    return {idx, true};
}

std::optional<std::size_t> PoseGraph::find(Pose p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

void PoseGraph::set_open(std::size_t from, Action a) {
    if (a == Action::Stay) return;
    auto n = find(displaced(pose(from), a));
    if (!n) throw std::logic_error("pose graph: opening an edge towards an unknown pose");
    kinds_[from][index_of(a)] = EdgeKind::Open;
    kinds_[*n][index_of(inverse(a))] = EdgeKind::Open;
}

void PoseGraph::set_blocked(std::size_t from, Action a) {
    if (a == Action::Stay) throw std::logic_error("pose graph: Stay cannot be blocked");
    kinds_.at(from)[index_of(a)] = EdgeKind::Blocked;
    if (auto n = find(displaced(pose(from), a))) kinds_[*n][index_of(inverse(a))] = EdgeKind::Blocked;
}

EdgeKind PoseGraph::kind(std::size_t from, Action a) const {
    if (a == Action::Stay) return EdgeKind::Open;
    return kinds_.at(from)[index_of(a)];
}

PoseEdge PoseGraph::edge(std::size_t from, Action a) const {
    const EdgeKind k = kind(from, a);
    switch (k) {
        case EdgeKind::Open:
            if (a == Action::Stay) return {k, from};
            return {k, find(displaced(pose(from), a))};
        case EdgeKind::Blocked: return {k, from};
        default: return {k, std::nullopt};
    }
}

}  // namespace aifnav
