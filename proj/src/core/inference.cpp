#include "aifnav/core/inference.hpp"

#include <cmath>
#include <stdexcept>

#include "aifnav/kernels/kernels.hpp"

namespace aifnav {
namespace {

// Guards log(0) for terms whose weight is positive but whose factor vanished.
constexpr double kLogGuard = 1e-300;

double safe_log(double x) { return std::log(x > kLogGuard ? x : kLogGuard); }

}  // namespace

Categorical pose_belief(const Categorical& states, const GenerativeModel& model) {
    if (states.size() != model.num_states()) throw std::invalid_argument("pose_belief: dimension mismatch");
    std::vector<double> w(model.num_poses(), 0.0);
    for (std::size_t s = 0; s < states.size(); ++s) {
        if (states[s] == 0.0) continue;
        const auto col = model.pose_column(s);
        kernels::axpy(states[s], col.data(), w.data(), w.size());
    }
    if (kernels::sum(w.data(), w.size()) <= 0.0) return Categorical::uniform(model.num_poses());
    return Categorical::from_weights(std::move(w));
}

Categorical predict_state(const Categorical& prior, Action action, const GenerativeModel& model) {
    const std::size_t n = model.num_states();
    if (prior.size() != n) throw std::invalid_argument("predict_state: prior length differs from state dimension");
    if (action == Action::Stay) return prior;
    const auto& counts = model.transition_counts(action);
    std::vector<double> out(n, 0.0);
    for (std::size_t prev = 0; prev < n; ++prev) {
        if (prior[prev] == 0.0) continue;
        const double total = counts.column_total(prev, n);
        kernels::axpy(prior[prev] / total, counts.column(prev), out.data(), n);
    }
    return Categorical::from_weights(std::move(out));
}

std::vector<double> likelihood_column(std::optional<std::size_t> observation, std::optional<std::size_t> pose,
                                      const GenerativeModel& model) {
    std::vector<double> lik(model.num_states(), 1.0);
    if (observation) {
        if (*observation >= model.num_observations()) throw std::out_of_range("infer_state: observation index");
        const auto po = model.observation_likelihood(*observation);
        kernels::hadamard(lik.data(), po.data(), lik.data(), lik.size());
    }
    if (pose) {
        if (*pose >= model.num_poses()) throw std::out_of_range("infer_state: unknown pose");
        const auto pp = model.pose_likelihood(*pose);
        kernels::hadamard(lik.data(), pp.data(), lik.data(), lik.size());
    }
    return lik;
}

InferenceResult infer_state(const Categorical& predictive, std::optional<std::size_t> observation,
                            std::optional<std::size_t> pose, const GenerativeModel& model) {
    const std::size_t n = model.num_states();
    if (predictive.size() != n) throw std::invalid_argument("infer_state: predictive length differs from state dimension");
    const auto lik = likelihood_column(observation, pose, model);

    std::vector<double> post(n);
    kernels::hadamard(predictive.data(), lik.data(), post.data(), n);
    InferenceResult r;
    r.evidence = kernels::sum(post.data(), n);
    Categorical posterior;
    if (r.evidence > 0.0) {
        posterior = Categorical::from_weights(std::move(post));
    } else {
        r.contradiction = true;
        std::vector<double> only = observation ? model.observation_likelihood(*observation) : lik;
        if (kernels::sum(only.data(), n) > 0.0)
            posterior = Categorical::from_weights(std::move(only));
        else
            posterior = Categorical::uniform(n);
    }
    r.free_energy = compute_vfe(posterior, predictive, lik);
    r.belief.confidence = posterior.max();
    r.belief.poses = pose ? Categorical::one_hot(model.num_poses(), *pose) : pose_belief(posterior, model);
    r.belief.states = std::move(posterior);
    return r;
}

double compute_vfe(const Categorical& posterior, const Categorical& predictive, const std::vector<double>& likelihood) {
    if (posterior.size() != predictive.size() || posterior.size() != likelihood.size())
        throw std::invalid_argument("compute_vfe: dimension mismatch");
    double complexity = 0.0;
    double accuracy = 0.0;
    for (std::size_t i = 0; i < posterior.size(); ++i) {
        const double q = posterior[i];
        if (q <= 0.0) continue;
        if (likelihood[i] < 0.0) throw std::invalid_argument("compute_vfe: negative likelihood");
        complexity += q * (std::log(q) - safe_log(predictive[i]));
        accuracy += q * safe_log(likelihood[i]);
    }
    return complexity - accuracy;
}

}  // namespace aifnav
