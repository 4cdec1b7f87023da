#pragma once

#include <cstddef>
#include <vector>

#include "aifnav/core/generative_model.hpp"
#include "aifnav/planner/rollout.hpp"
#include "aifnav/planner/snapshot.hpp"

namespace aifnav {

// One step of G, all in nats. Lower G is better:
// G_step = collision_risk - info_gain - param_gain - utility.
struct EFEStep {
    double info_gain = 0.0;       // I(S;O) under the predicted state belief
    double param_gain = 0.0;      // contact-flag information at poses not yet credited
    double utility = 0.0;         // weight * E[log preference]
    double collision_risk = 0.0;  // -E[log P(c)]
    double total() const { return collision_risk - info_gain - param_gain - utility; }
};

struct EFEBreakdown {
    std::vector<EFEStep> steps;
    // Utility of the final belief repeated over the unused horizon, so that
    // policies of different lengths are compared over the same horizon.
    double terminal_utility = 0.0;
    double total = 0.0;
};

// Component totals for one policy; G = collision_risk - info_gain - param_gain - utility.
struct PolicyScore {
    double G = 0.0;
    double info_gain = 0.0;
    double param_gain = 0.0;
    double utility = 0.0;
    double collision_risk = 0.0;
};

PolicyScore summarise(const EFEBreakdown& b);

// Scores one step from the predicted state and pose marginals. `consumed`
// tracks, per pose, how much of its novelty earlier steps of the same policy
// claimed.
EFEStep evaluate_step(const std::vector<double>& states, const std::vector<double>& poses, double collision, bool stay,
                      const ModelSnapshot& snap, std::vector<double>& consumed);

double expected_utility(const std::vector<double>& states, const ModelSnapshot& snap);

// lookahead <= policy length disables padding.
EFEBreakdown expected_free_energy(const std::vector<RolloutStep>& rollout, const Policy& policy,
                                  const ModelSnapshot& snap, int lookahead);

// sigma(-G) where G = -(information about which state the pose holds) plus
// the expected collision cost of entering it. Unanchored poses carry one
// extra "new state" hypothesis.
double position_likelihood_efe(const GenerativeModel& model, std::size_t pose_index, double collision_probability,
                               double collision_epsilon);

}  // namespace aifnav
