#pragma once

#include <cstddef>
#include <vector>

#include "aifnav/core/inference.hpp"
#include "aifnav/planner/policy.hpp"
#include "aifnav/planner/snapshot.hpp"

namespace aifnav {

// Joint filter over (pose, state). Only poses carrying mass are listed;
// mass is row-major [k * n_states + s] for poses[k]. Total mass is 1.
struct JointBelief {
    std::vector<std::size_t> poses;
    std::vector<double> mass;

    std::vector<double> state_marginal(std::size_t n_states) const;
    std::vector<double> pose_marginal(std::size_t n_poses, std::size_t n_states) const;
};

// alpha(p, s) = q(s) P(p|s)
JointBelief initial_joint(const BeliefState& belief, const ModelSnapshot& snap);

// Advances the joint belief by one action; returns the predicted collision
// probability. Pose mass moves by the pose graph, state mass by B_s, and both
// are reconciled through P(p|s). Stay leaves the belief untouched.
double step_joint(const JointBelief& in, Action a, const ModelSnapshot& snap, JointBelief& out);

struct RolloutStep {
    std::vector<double> states;
    std::vector<double> poses;
    std::vector<double> observations;
    double collision = 0.0;
};

std::vector<RolloutStep> rollout_policy(const BeliefState& belief, const ModelSnapshot& snap, const Policy& policy);

}  // namespace aifnav
