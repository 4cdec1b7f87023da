#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "aifnav/core/types.hpp"

namespace aifnav {

enum class EdgeKind { Unknown, Open, Blocked };

struct PoseEdge {
    EdgeKind kind = EdgeKind::Unknown;
    // Open: the displaced pose; Blocked: the source itself; Unknown: empty.
    std::optional<std::size_t> target;
};

// Deterministic lattice transition structure over the poses the agent knows.
// Walls are symmetric, so setting an edge also sets the mirror edge when the
// neighbouring pose is known, and a newly added pose inherits mirrored edges.
class PoseGraph {
public:
    struct AddResult {
        std::size_t index;
        bool created;
    };

    AddResult add_pose(Pose p);
    std::optional<std::size_t> find(Pose p) const;
    const Pose& pose(std::size_t index) const { return poses_.at(index); }
    const std::vector<Pose>& poses() const { return poses_; }
    std::size_t size() const { return poses_.size(); }

    // Requires the displaced pose to be known.
    void set_open(std::size_t from, Action a);
    void set_blocked(std::size_t from, Action a);

    // Stay always maps a pose to itself as an open edge.
    PoseEdge edge(std::size_t from, Action a) const;
    EdgeKind kind(std::size_t from, Action a) const;

    bool operator==(const PoseGraph&) const = default;

private:
    std::vector<Pose> poses_;
    std::map<Pose, std::size_t> index_;
    std::vector<std::array<EdgeKind, kNumMoves>> kinds_;
};

}  // namespace aifnav
