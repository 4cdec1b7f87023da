#pragma once

#include <optional>
#include <vector>

namespace aifnav {

struct PreferenceModel {
    std::optional<int> goal_colour;
    double utility_weight = 0.0;
    // Logit of the goal colour relative to every other observation.
    double goal_strength = 4.0;
    // Softened collision prior P(c) = epsilon.
    double collision_epsilon = 1e-3;

    // log softmax over the known observations, indexed like A_o rows;
    // uniform when no goal is set or the goal colour is not yet known.
    std::vector<double> log_preference(const std::vector<int>& colour_of_observation) const;

    void validate() const;
};

}  // namespace aifnav
