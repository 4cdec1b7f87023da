#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "aifnav/core/types.hpp"

namespace aifnav {

using Policy = std::vector<Action>;

enum class PolicyStrategy { Exhaustive, NonReturning, LShaped };

std::string_view to_string(PolicyStrategy s);
PolicyStrategy parse_strategy(std::string_view name);

struct PlannerConfig {
    int lookahead = 6;
    double gamma = 16.0;
    PolicyStrategy strategy = PolicyStrategy::LShaped;
    std::uint64_t seed = 0;
    // Non-returning planning expands lazily: beyond the first step a branch
    // whose predicted collision probability reaches this value is cut, and at
    // most node_budget tree nodes are expanded (breadth first).
    double prune_collision = 0.5;
    std::size_t node_budget = 50000;

    // Throws std::invalid_argument.
    void validate() const;
};

// Full enumeration. Exhaustive: all 5^L sequences. L-shaped: one straight run
// plus an optional perpendicular run, Stay appended when shorter than L, plus
// [Stay]; 4L^2+1 policies. Non-returning: self-avoiding lattice walks with
// Stay-truncated prefixes, plus [Stay].
std::vector<Policy> generate_policies(PolicyStrategy strategy, int lookahead);
std::vector<Policy> generate_policies(const PlannerConfig& config);

// "UUR." style compact label; '.' is Stay.
std::string policy_label(const Policy& p);

}  // namespace aifnav
