#include "aifnav/planner/efe.hpp"

#include <cmath>
#include <stdexcept>

#include "aifnav/kernels/kernels.hpp"

namespace aifnav {

PolicyScore summarise(const EFEBreakdown& b) {
    PolicyScore s;
    for (const auto& st : b.steps) {
        s.info_gain += st.info_gain;
        s.param_gain += st.param_gain;
        s.utility += st.utility;
        s.collision_risk += st.collision_risk;
    }
    s.utility += b.terminal_utility;
    s.G = b.total;
    return s;
}

double expected_utility(const std::vector<double>& states, const ModelSnapshot& snap) {
    if (snap.utility_weight == 0.0) return 0.0;
    std::vector<double> qo(snap.n_obs);
    kernels::matvec_colmajor(snap.obs.data(), snap.n_obs, snap.n_states, states.data(), qo.data());
    return snap.utility_weight * kernels::dot(qo.data(), snap.log_preference.data(), snap.n_obs);
}

EFEStep evaluate_step(const std::vector<double>& states, const std::vector<double>& poses, double collision, bool stay,
                      const ModelSnapshot& snap, std::vector<double>& consumed) {
    EFEStep st;
    std::vector<double> qo(snap.n_obs);
    kernels::matvec_colmajor(snap.obs.data(), snap.n_obs, snap.n_states, states.data(), qo.data());
    if (snap.utility_weight != 0.0)
        st.utility = snap.utility_weight * kernels::dot(qo.data(), snap.log_preference.data(), snap.n_obs);
    if (stay) return st;

    const double ambiguity = kernels::dot(states.data(), snap.obs_entropy.data(), snap.n_states);
    const double ig = kernels::entropy(qo.data(), snap.n_obs) - ambiguity;
    st.info_gain = ig > 0.0 ? ig : 0.0;

    double pg = 0.0;
    for (std::size_t p = 0; p < snap.n_poses; ++p) {
        if (poses[p] == 0.0) continue;
        const double fresh = poses[p] * (1.0 - consumed[p]);
        pg += fresh * snap.pose_novelty[p];
        consumed[p] += fresh;
    }
    st.param_gain = pg;

    if (collision > 0.0)
        st.collision_risk = -(collision * snap.log_eps + (1.0 - collision) * snap.log_one_minus_eps);
    else
        st.collision_risk = -snap.log_one_minus_eps;
    return st;
}

EFEBreakdown expected_free_energy(const std::vector<RolloutStep>& rollout, const Policy& policy,
                                  const ModelSnapshot& snap, int lookahead) {
    if (rollout.empty() || rollout.size() != policy.size())
        throw std::invalid_argument("expected_free_energy: rollout must match a non-empty policy");
    EFEBreakdown b;
    std::vector<double> consumed(snap.n_poses, 0.0);
    double total = 0.0;
    for (std::size_t t = 0; t < rollout.size(); ++t) {
        const auto st = evaluate_step(rollout[t].states, rollout[t].poses, rollout[t].collision, policy[t] == Action::Stay, snap, consumed);
        total += st.total();
        b.steps.push_back(st);
    }
    const int pad = lookahead - static_cast<int>(policy.size());
    if (pad > 0) {
        b.terminal_utility = pad * expected_utility(rollout.back().states, snap);
        total -= b.terminal_utility;
    }
    b.total = total;
    return b;
}

double position_likelihood_efe(const GenerativeModel& model, std::size_t pose_index, double collision_probability,
                               double collision_epsilon) {
    if (pose_index >= model.num_poses()) throw std::out_of_range("position_likelihood_efe: unknown pose");
    if (collision_probability < 0.0 || collision_probability > 1.0)
        throw std::invalid_argument("position_likelihood_efe: collision probability outside [0,1]");
    auto w = model.states_given_pose(pose_index);
    double gain = 0.0;
    if (kernels::sum(w.data(), w.size()) <= 0.0)
        gain = std::log(static_cast<double>(model.num_states() + 1));
    else
        gain = kernels::entropy(w.data(), w.size());
    double value = -(1.0 - collision_probability) * std::log1p(-collision_epsilon);
    if (collision_probability > 0.0) value -= collision_probability * std::log(collision_epsilon);
    const double G = value - gain;
    return 1.0 / (1.0 + std::exp(G));
}

}  // namespace aifnav
