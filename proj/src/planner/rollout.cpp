#include "aifnav/planner/rollout.hpp"

#include <stdexcept>

#include "aifnav/kernels/kernels.hpp"

namespace aifnav {

std::vector<double> JointBelief::state_marginal(std::size_t n_states) const {
    std::vector<double> q(n_states, 0.0);
    for (std::size_t k = 0; k < poses.size(); ++k) kernels::axpy(1.0, mass.data() + k * n_states, q.data(), n_states);
    return q;
}

std::vector<double> JointBelief::pose_marginal(std::size_t n_poses, std::size_t n_states) const {
    std::vector<double> q(n_poses, 0.0);
    for (std::size_t k = 0; k < poses.size(); ++k) q[poses[k]] += kernels::sum(mass.data() + k * n_states, n_states);
    return q;
}

JointBelief initial_joint(const BeliefState& belief, const ModelSnapshot& snap) {
    const std::size_t ns = snap.n_states;
    if (belief.states.size() != ns) throw std::invalid_argument("rollout: belief dimension differs from model");
    JointBelief j;
    std::vector<double> row(ns);
    double total = 0.0;
    for (std::size_t p = 0; p < snap.n_poses; ++p) {
        kernels::hadamard(belief.states.data(), snap.pose_row(p), row.data(), ns);
        const double m = kernels::sum(row.data(), ns);
        if (m <= 0.0) continue;
        j.poses.push_back(p);
        j.mass.insert(j.mass.end(), row.begin(), row.end());
        total += m;
    }
    if (total <= 0.0) throw std::invalid_argument("rollout: belief has no mass on any known pose");
    kernels::scale(1.0 / total, j.mass.data(), j.mass.size());
    return j;
}

double step_joint(const JointBelief& in, Action a, const ModelSnapshot& snap, JointBelief& out) {
    const std::size_t ns = snap.n_states;
    if (a == Action::Stay) {
        out = in;
        return 0.0;
    }
    // Pose transport. Slot per destination pose, discovered in order.
    thread_local std::vector<long> slot;
    slot.assign(snap.n_poses, -1);
    std::vector<std::size_t> dest;
    std::vector<double> moved;
    auto bucket = [&](std::size_t p) -> double* {
        if (slot[p] < 0) {
            slot[p] = static_cast<long>(dest.size());
            dest.push_back(p);
            moved.resize(moved.size() + ns, 0.0);
        }
        return moved.data() + static_cast<std::size_t>(slot[p]) * ns;
    };
    double collision = 0.0;
    for (std::size_t k = 0; k < in.poses.size(); ++k) {
        const std::size_t p = in.poses[k];
        const double* row = in.mass.data() + k * ns;
        const PoseMove& m = snap.moves[p][index_of(a)];
        collision += m.collision * kernels::sum(row, ns);
        if (m.p_move > 0.0) kernels::axpy(m.p_move, row, bucket(m.target), ns);
        if (m.p_move < 1.0) kernels::axpy(1.0 - m.p_move, row, bucket(p), ns);
    }

    const double* b = snap.trans[index_of(a)].data();
    out.poses = dest;
    out.mass.assign(dest.size() * ns, 0.0);
    std::vector<double> predicted(ns);
    double total = 0.0;
    for (std::size_t k = 0; k < dest.size(); ++k) {
        kernels::matvec_colmajor(b, ns, ns, moved.data() + k * ns, predicted.data());
        double* target = out.mass.data() + k * ns;
        kernels::hadamard(predicted.data(), snap.pose_row(dest[k]), target, ns);
        total += kernels::sum(target, ns);
    }
    if (total > 0.0) {
        kernels::scale(1.0 / total, out.mass.data(), out.mass.size());
    } else {
        // No state is consistent with any reachable pose: drop the pose factor.
        for (std::size_t k = 0; k < dest.size(); ++k)
            kernels::matvec_colmajor(b, ns, ns, moved.data() + k * ns, out.mass.data() + k * ns);
        kernels::normalise(out.mass.data(), out.mass.size());
    }
    return collision;
}

std::vector<RolloutStep> rollout_policy(const BeliefState& belief, const ModelSnapshot& snap, const Policy& policy) {
    JointBelief cur = initial_joint(belief, snap);
    JointBelief next;
    std::vector<RolloutStep> out;
    out.reserve(policy.size());
    for (Action a : policy) {
        RolloutStep st;
        st.collision = step_joint(cur, a, snap, next);
        st.states = next.state_marginal(snap.n_states);
        st.poses = next.pose_marginal(snap.n_poses, snap.n_states);
        st.observations.assign(snap.n_obs, 0.0);
        kernels::matvec_colmajor(snap.obs.data(), snap.n_obs, snap.n_states, st.states.data(), st.observations.data());
        out.push_back(std::move(st));
        cur = std::move(next);
    }
    return out;
}

}  // namespace aifnav
