#pragma once

#include <cstddef>
#include <string_view>

#include "aifnav/core/categorical.hpp"
#include "aifnav/core/generative_model.hpp"

namespace aifnav {

enum class Situation { Possible, Impossible, Imagined };

// Throws std::invalid_argument on an unknown tag.
Situation parse_situation(std::string_view tag);
std::string_view to_string(Situation s);

struct LearningRateTable {
    double possible_forward = 7.0;
    double possible_reverse = 5.0;
    double impossible_forward = -7.0;
    double impossible_reverse = -5.0;
    double imagined_forward = 5.0;
    double imagined_reverse = 3.0;
    double likelihood = 1.0;

    double forward(Situation s) const;
    double reverse(Situation s) const;
    // Impossible negates possible; imagined is weaker than possible.
    bool consistent() const;
};

// counts[j,i,a] += forward * q_curr[j] * q_prev[i]; with_reverse also adds
// counts[i,j,inverse(a)] += reverse * q_prev[i] * q_curr[j]. Clamped at the floor.
void update_transition_counts(GenerativeModel& model, const Categorical& q_prev, const Categorical& q_curr,
                              Action action, Situation situation, const LearningRateTable& rates,
                              bool with_reverse = true);

// counts[outcome, s] += rate * posterior[s] over the active states, unless frozen.
void update_likelihood_counts(DirichletCounts& counts, const Categorical& posterior, std::size_t outcome,
                              double rate, bool frozen);

void update_observation_counts(GenerativeModel& model, const Categorical& posterior, std::size_t observation,
                               const LearningRateTable& rates, bool frozen);
void update_pose_counts(GenerativeModel& model, const Categorical& posterior, std::size_t pose,
                        const LearningRateTable& rates, bool frozen);

}  // namespace aifnav
