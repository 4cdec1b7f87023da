#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "aifnav/core/generative_model.hpp"
#include "aifnav/planner/preference.hpp"

namespace aifnav {

// Where pose mass goes under one action: p_move of it to `target`, the rest
// stays; `collision` is the probability the move is blocked.
struct PoseMove {
    std::size_t target = 0;
    double p_move = 0.0;
    double collision = 0.0;
};

// Immutable, normalised, dense copy of the model used during planning.
struct ModelSnapshot {
    std::size_t n_states = 0;
    std::size_t n_obs = 0;
    std::size_t n_poses = 0;

    std::vector<double> obs;          // column-major n_obs x n_states, P(o|s)
    std::vector<double> obs_entropy;  // H[P(.|s)]
    std::vector<double> pose_by_pose; // [p * n_states + s] = P(p|s)
    std::array<std::vector<double>, kNumActions> trans;  // column-major n x n, P(s'|s,a)
    std::vector<std::array<PoseMove, kNumMoves>> moves;  // per pose
    // Expected information from sensing each pose: ln 2 per direction not yet
    // sensed, plus ln(n_obs + 1) when its state has never been observed.
    std::vector<double> pose_novelty;

    std::vector<double> log_preference;  // per observation
    double utility_weight = 0.0;
    double log_eps = 0.0;
    double log_one_minus_eps = 0.0;

    const double* obs_column(std::size_t s) const { return obs.data() + s * n_obs; }
    const double* pose_row(std::size_t p) const { return pose_by_pose.data() + p * n_states; }
};

ModelSnapshot make_snapshot(const GenerativeModel& model, const PreferenceModel& prefs,
                            const std::vector<int>& colour_of_observation);

}  // namespace aifnav
