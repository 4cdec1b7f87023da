#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "aifnav/core/categorical.hpp"
#include "aifnav/core/inference.hpp"
#include "aifnav/planner/efe.hpp"
#include "aifnav/planner/policy.hpp"
#include "aifnav/planner/snapshot.hpp"

namespace aifnav {

// softmax(-gamma * G), shifted by min G for stability.
Categorical policy_distribution(const std::vector<double>& G, double gamma);

struct Selection {
    std::size_t index = 0;
    Categorical distribution;
};

// Samples from policy_distribution with a 53-bit uniform drawn from rng.
Selection select_policy(const std::vector<double>& G, double gamma, std::mt19937_64& rng);

struct Decision {
    std::vector<Policy> policies;
    std::vector<PolicyScore> scores;
    Categorical distribution;
    std::size_t chosen = 0;

    Action action() const { return policies.at(chosen).front(); }
};

class Planner {
public:
    explicit Planner(PlannerConfig config);

    const PlannerConfig& config() const { return cfg_; }

    // Candidate policies with their scores. Fixed strategies reuse a prefix
    // trie; non-returning expands lazily against the snapshot's pose graph.
    void score(const BeliefState& belief, const ModelSnapshot& snap, std::vector<Policy>& policies,
               std::vector<PolicyScore>& scores) const;

    Decision decide(const BeliefState& belief, const ModelSnapshot& snap, std::mt19937_64& rng) const;

private:
    struct TrieNode {
        Action action = Action::Stay;
        int depth = 0;
        std::vector<int> children;
        std::vector<std::size_t> ends;
    };

    void score_trie(const BeliefState& belief, const ModelSnapshot& snap, std::vector<PolicyScore>& scores) const;
    void score_lazy(const BeliefState& belief, const ModelSnapshot& snap, std::vector<Policy>& policies,
                    std::vector<PolicyScore>& scores) const;

    PlannerConfig cfg_;
    std::vector<Policy> fixed_;
    std::vector<TrieNode> trie_;
};

}  // namespace aifnav
