#include "aifnav/planner/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aifnav/kernels/kernels.hpp"

namespace aifnav {
namespace {

struct Partial {
    double G = 0.0;
    double info_gain = 0.0;
    double param_gain = 0.0;
    double utility = 0.0;
    double collision_risk = 0.0;

    Partial plus(const EFEStep& st) const {
        Partial p = *this;
        p.G += st.total();
        p.info_gain += st.info_gain;
        p.param_gain += st.param_gain;
        p.utility += st.utility;
        p.collision_risk += st.collision_risk;
        return p;
    }

    // Closes a policy of the given length: the last step's utility repeats
    // over the remaining horizon.
    PolicyScore finish(int length, int lookahead, double last_utility) const {
        PolicyScore s{G, info_gain, param_gain, utility, collision_risk};
        const int pad = lookahead - length;
        if (pad > 0) {
            const double term = pad * last_utility;
            s.utility += term;
            s.G -= term;
        }
        return s;
    }
};

}  // namespace

Categorical policy_distribution(const std::vector<double>& G, double gamma) {
    if (G.empty()) throw std::invalid_argument("select_policy: no policies");
    if (!(gamma > 0.0)) throw std::invalid_argument("select_policy: gamma must be positive");
    const double lo = *std::min_element(G.begin(), G.end());
    std::vector<double> w(G.size());
    for (std::size_t i = 0; i < G.size(); ++i) w[i] = std::exp(-gamma * (G[i] - lo));
    return Categorical::from_weights(std::move(w));
}

Selection select_policy(const std::vector<double>& G, double gamma, std::mt19937_64& rng) {
    Selection sel;
    sel.distribution = policy_distribution(G, gamma);
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    double acc = 0.0;
    sel.index = sel.distribution.size() - 1;
    for (std::size_t i = 0; i < sel.distribution.size(); ++i) {
        acc += sel.distribution[i];
        if (u < acc) {
            sel.index = i;
            break;
        }
    }
    return sel;
}

Planner::Planner(PlannerConfig config) : cfg_(config) {
    cfg_.validate();
    if (cfg_.strategy == PolicyStrategy::NonReturning) return;
    fixed_ = generate_policies(cfg_);
    trie_.push_back(TrieNode{});
    for (std::size_t i = 0; i < fixed_.size(); ++i) {
        int node = 0;
        for (Action a : fixed_[i]) {
            int next = -1;
            for (int c : trie_[static_cast<std::size_t>(node)].children)
                if (trie_[static_cast<std::size_t>(c)].action == a) next = c;
            if (next < 0) {
                next = static_cast<int>(trie_.size());
                TrieNode child;
                child.action = a;
                child.depth = trie_[static_cast<std::size_t>(node)].depth + 1;
                trie_.push_back(child);
                trie_[static_cast<std::size_t>(node)].children.push_back(next);
            }
            node = next;
        }
        trie_[static_cast<std::size_t>(node)].ends.push_back(i);
    }
}

void Planner::score_trie(const BeliefState& belief, const ModelSnapshot& snap, std::vector<PolicyScore>& scores) const {
    scores.assign(fixed_.size(), PolicyScore{});
    const int L = cfg_.lookahead;
    struct Frame {
        int node;
        JointBelief joint;
        std::vector<double> consumed;
        Partial acc;
    };
    std::vector<Frame> stack;
    stack.push_back({0, initial_joint(belief, snap), std::vector<double>(snap.n_poses, 0.0), Partial{}});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        const auto& children = trie_[static_cast<std::size_t>(f.node)].children;
        for (auto it = children.rbegin(); it != children.rend(); ++it) {
            const TrieNode& child = trie_[static_cast<std::size_t>(*it)];
            Frame next{*it, {}, f.consumed, {}};
            const double collision = step_joint(f.joint, child.action, snap, next.joint);
            const auto q = next.joint.state_marginal(snap.n_states);
            const auto qp = next.joint.pose_marginal(snap.n_poses, snap.n_states);
            const EFEStep st = evaluate_step(q, qp, collision, child.action == Action::Stay, snap, next.consumed);
            next.acc = f.acc.plus(st);
            for (std::size_t idx : child.ends) scores[idx] = next.acc.finish(child.depth, L, st.utility);
            if (!child.children.empty()) stack.push_back(std::move(next));
        }
    }
}

void Planner::score_lazy(const BeliefState& belief, const ModelSnapshot& snap, std::vector<Policy>& policies,
                         std::vector<PolicyScore>& scores) const {
    const int L = cfg_.lookahead;
    struct Node {
        Policy actions;
        std::vector<Pose> path;
        JointBelief joint;
        std::vector<double> consumed;
        Partial acc;
    };
    policies.clear();
    scores.clear();

    Node root{{}, {Pose{0, 0}}, initial_joint(belief, snap), std::vector<double>(snap.n_poses, 0.0), Partial{}};
    {
        const auto q = root.joint.state_marginal(snap.n_states);
        const auto qp = root.joint.pose_marginal(snap.n_poses, snap.n_states);
        std::vector<double> scratch = root.consumed;
        const EFEStep st = evaluate_step(q, qp, 0.0, true, snap, scratch);
        policies.push_back({Action::Stay});
        scores.push_back(root.acc.plus(st).finish(1, L, st.utility));
    }

    std::vector<Node> level;
    level.push_back(std::move(root));
    std::size_t expanded = 0;
    for (int depth = 0; depth < L && !level.empty(); ++depth) {
        std::vector<Node> next_level;
        bool exhausted = false;
        for (Node& node : level) {
            for (Action a : kMoves) {
                const Pose rel = displaced(node.path.back(), a);
                if (std::find(node.path.begin(), node.path.end(), rel) != node.path.end()) continue;
                Node child;
                const double collision = step_joint(node.joint, a, snap, child.joint);
                if (depth > 0 && collision >= cfg_.prune_collision) continue;
                if (++expanded > cfg_.node_budget) {
                    exhausted = true;
                    break;
                }
                child.consumed = node.consumed;
                const auto q = child.joint.state_marginal(snap.n_states);
                const auto qp = child.joint.pose_marginal(snap.n_poses, snap.n_states);
                const EFEStep st = evaluate_step(q, qp, collision, false, snap, child.consumed);
                child.acc = node.acc.plus(st);
                child.actions = node.actions;
                child.actions.push_back(a);
                if (depth + 1 == L) {
                    policies.push_back(child.actions);
                    scores.push_back(child.acc.finish(L, L, st.utility));
                    continue;
                }
                // The Stay step repeats the same belief, so its utility is st.utility.
                EFEStep stay_step;
                stay_step.utility = st.utility;
                Policy stopped = child.actions;
                stopped.push_back(Action::Stay);
                scores.push_back(child.acc.plus(stay_step).finish(depth + 2, L, st.utility));
                policies.push_back(std::move(stopped));
                child.path = node.path;
                child.path.push_back(rel);
                next_level.push_back(std::move(child));
            }
            if (exhausted) break;
        }
        if (exhausted) break;
        level = std::move(next_level);
    }
}

void Planner::score(const BeliefState& belief, const ModelSnapshot& snap, std::vector<Policy>& policies,
                    std::vector<PolicyScore>& scores) const {
    if (cfg_.strategy == PolicyStrategy::NonReturning) {
        score_lazy(belief, snap, policies, scores);
        return;
    }
    policies = fixed_;
    score_trie(belief, snap, scores);
}

Decision Planner::decide(const BeliefState& belief, const ModelSnapshot& snap, std::mt19937_64& rng) const {
    Decision d;
    score(belief, snap, d.policies, d.scores);
    std::vector<double> G(d.scores.size());
    for (std::size_t i = 0; i < G.size(); ++i) G[i] = d.scores[i].G;
    auto sel = select_policy(G, cfg_.gamma, rng);
    d.chosen = sel.index;
    d.distribution = std::move(sel.distribution);
    return d;
}

}  // namespace aifnav
