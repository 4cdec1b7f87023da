#include "aifnav/core/learning.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace aifnav {

Situation parse_situation(std::string_view tag) {
    if (tag == "possible") return Situation::Possible;
    if (tag == "impossible") return Situation::Impossible;
    if (tag == "imagined") return Situation::Imagined;
    throw std::invalid_argument("unknown situation tag: " + std::string(tag));
}

std::string_view to_string(Situation s) {
    switch (s) {
        case Situation::Possible: return "possible";
        case Situation::Impossible: return "impossible";
        case Situation::Imagined: return "imagined";
    }
    return "?";
}

double LearningRateTable::forward(Situation s) const {
    switch (s) {
        case Situation::Possible: return possible_forward;
        case Situation::Impossible: return impossible_forward;
        case Situation::Imagined: return imagined_forward;
    }
    throw std::invalid_argument("unknown situation");
}

double LearningRateTable::reverse(Situation s) const {
    switch (s) {
        case Situation::Possible: return possible_reverse;
        case Situation::Impossible: return impossible_reverse;
        case Situation::Imagined: return imagined_reverse;
    }
    throw std::invalid_argument("unknown situation");
}

bool LearningRateTable::consistent() const {
    return impossible_forward == -possible_forward && impossible_reverse == -possible_reverse &&
           std::abs(imagined_forward) < std::abs(possible_forward) &&
           std::abs(imagined_reverse) < std::abs(possible_reverse);
}

void update_transition_counts(GenerativeModel& model, const Categorical& q_prev, const Categorical& q_curr,
                              Action action, Situation situation, const LearningRateTable& rates,
                              bool with_reverse) {
    const std::size_t n = model.num_states();
    if (q_prev.size() != n || q_curr.size() != n)
        throw std::invalid_argument("update_transition_counts: belief length differs from state dimension");
    const double fwd = rates.forward(situation);
    const double rev = rates.reverse(situation);
    auto& forward = model.transition_counts(action);
    for (std::size_t i = 0; i < n; ++i) {
        if (q_prev[i] == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (q_curr[j] != 0.0) forward.add(j, i, fwd * q_curr[j] * q_prev[i]);
    }
    if (!with_reverse) return;
    auto& backward = model.transition_counts(inverse(action));
    for (std::size_t j = 0; j < n; ++j) {
        if (q_curr[j] == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i)
            if (q_prev[i] != 0.0) backward.add(i, j, rev * q_prev[i] * q_curr[j]);
    }
}

void update_likelihood_counts(DirichletCounts& counts, const Categorical& posterior, std::size_t outcome,
                              double rate, bool frozen) {
    if (frozen) return;
    if (outcome >= counts.rows()) throw std::out_of_range("update_likelihood_counts: outcome index");
    if (posterior.size() > counts.cols()) throw std::invalid_argument("update_likelihood_counts: posterior too long");
    for (std::size_t s = 0; s < posterior.size(); ++s)
        if (posterior[s] != 0.0) counts.add(outcome, s, rate * posterior[s]);
}

void update_observation_counts(GenerativeModel& model, const Categorical& posterior, std::size_t observation,
                               const LearningRateTable& rates, bool frozen) {
    if (posterior.size() != model.num_states()) throw std::invalid_argument("update_observation_counts: dimension");
    if (observation >= model.num_observations()) throw std::out_of_range("update_observation_counts: observation");
    update_likelihood_counts(model.observation_counts(), posterior, observation, rates.likelihood, frozen);
}

void update_pose_counts(GenerativeModel& model, const Categorical& posterior, std::size_t pose,
                        const LearningRateTable& rates, bool frozen) {
    if (posterior.size() != model.num_states()) throw std::invalid_argument("update_pose_counts: dimension");
    if (pose >= model.num_poses()) throw std::out_of_range("update_pose_counts: pose");
    update_likelihood_counts(model.pose_counts(), posterior, pose, rates.likelihood, frozen);
}

}  // namespace aifnav
