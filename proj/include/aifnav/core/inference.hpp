#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "aifnav/core/categorical.hpp"
#include "aifnav/core/generative_model.hpp"

namespace aifnav {

struct BeliefState {
    Categorical states;
    Categorical poses;  // over known poses
    double confidence = 0.0;
};

// Pose belief implied by a state posterior: sum_s q(s) P(p|s).
Categorical pose_belief(const Categorical& states, const GenerativeModel& model);

// Normalised B_s[a] q. Stay is the identity.
Categorical predict_state(const Categorical& prior, Action action, const GenerativeModel& model);

struct InferenceResult {
    BeliefState belief;
    double free_energy = 0.0;
    // sum_s predictive(s) * likelihood(s)
    double evidence = 0.0;
    // The product was unnormalisable; the posterior is likelihood-only.
    bool contradiction = false;
};

// posterior ∝ predictive × P(o|s) × P(p|s), each factor only when present.
InferenceResult infer_state(const Categorical& predictive, std::optional<std::size_t> observation,
                            std::optional<std::size_t> pose, const GenerativeModel& model);

// The joint likelihood column used by infer_state.
std::vector<double> likelihood_column(std::optional<std::size_t> observation, std::optional<std::size_t> pose,
                                      const GenerativeModel& model);

// KL(posterior || predictive) - E_posterior[log likelihood].
double compute_vfe(const Categorical& posterior, const Categorical& predictive, const std::vector<double>& likelihood);

}  // namespace aifnav
