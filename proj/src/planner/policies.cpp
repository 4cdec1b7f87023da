#include <set>
#include <stdexcept>
#include <string>

#include "aifnav/planner/policy.hpp"

namespace aifnav {
namespace {

void exhaustive(int depth, Policy& prefix, std::vector<Policy>& out) {
    if (depth == 0) {
        out.push_back(prefix);
        return;
    }
    for (Action a : kAllActions) {
        prefix.push_back(a);
        exhaustive(depth - 1, prefix, out);
        prefix.pop_back();
    }
}

void self_avoiding(int remaining, Pose at, std::set<Pose>& seen, Policy& prefix, std::vector<Policy>& out) {
    for (Action a : kMoves) {
        const Pose next = displaced(at, a);
        if (seen.count(next)) continue;
        prefix.push_back(a);
        seen.insert(next);
        if (remaining == 1) {
            out.push_back(prefix);
        } else {
            Policy stopped = prefix;
            stopped.push_back(Action::Stay);
            out.push_back(std::move(stopped));
            self_avoiding(remaining - 1, next, seen, prefix, out);
        }
        seen.erase(next);
        prefix.pop_back();
    }
}

bool perpendicular(Action a, Action b) {
    const bool va = a == Action::Up || a == Action::Down;
    const bool vb = b == Action::Up || b == Action::Down;
    return va != vb;
}

}  // namespace

std::string_view to_string(PolicyStrategy s) {
    switch (s) {
        case PolicyStrategy::Exhaustive: return "exhaustive";
        case PolicyStrategy::NonReturning: return "non-returning";
        case PolicyStrategy::LShaped: return "l-shaped";
    }
    return "?";
}

PolicyStrategy parse_strategy(std::string_view name) {
    if (name == "exhaustive") return PolicyStrategy::Exhaustive;
    if (name == "non-returning") return PolicyStrategy::NonReturning;
    if (name == "l-shaped") return PolicyStrategy::LShaped;
    throw std::invalid_argument("unknown policy strategy: " + std::string(name));
}

void PlannerConfig::validate() const {
    if (lookahead < 1) throw std::invalid_argument("planner: lookahead must be >= 1");
    if (!(gamma > 0.0)) throw std::invalid_argument("planner: gamma must be positive");
    if (!(prune_collision > 0.0 && prune_collision <= 1.0))
        throw std::invalid_argument("planner: prune_collision must lie in (0,1]");
    if (node_budget == 0) throw std::invalid_argument("planner: node budget must be positive");
}

std::vector<Policy> generate_policies(PolicyStrategy strategy, int lookahead) {
    if (lookahead < 1) throw std::invalid_argument("generate_policies: lookahead must be >= 1");
    std::vector<Policy> out;
    switch (strategy) {
        case PolicyStrategy::Exhaustive: {
            Policy prefix;
            exhaustive(lookahead, prefix, out);
            break;
        }
        case PolicyStrategy::NonReturning: {
            out.push_back({Action::Stay});
            Policy prefix;
            std::set<Pose> seen{Pose{0, 0}};
            self_avoiding(lookahead, Pose{0, 0}, seen, prefix, out);
            break;
        }
        case PolicyStrategy::LShaped: {
            out.push_back({Action::Stay});
            for (Action first : kMoves)
                for (int a = 1; a <= lookahead; ++a) {
                    Policy straight(static_cast<std::size_t>(a), first);
                    if (a < lookahead) {
                        Policy stopped = straight;
                        stopped.push_back(Action::Stay);
                        out.push_back(std::move(stopped));
                    } else {
                        out.push_back(straight);
                    }
                    for (Action second : kMoves) {
                        if (!perpendicular(first, second)) continue;
                        for (int b = 1; a + b <= lookahead; ++b) {
                            Policy bent = straight;
                            bent.insert(bent.end(), static_cast<std::size_t>(b), second);
                            if (a + b < lookahead) bent.push_back(Action::Stay);
                            out.push_back(std::move(bent));
                        }
                    }
                }
            break;
        }
    }
    return out;
}

std::vector<Policy> generate_policies(const PlannerConfig& config) {
    return generate_policies(config.strategy, config.lookahead);
}

std::string policy_label(const Policy& p) {
    std::string s;
    s.reserve(p.size());
    for (Action a : p) s.push_back(a == Action::Stay ? '.' : to_string(a).front());
    return s;
}

}  // namespace aifnav
