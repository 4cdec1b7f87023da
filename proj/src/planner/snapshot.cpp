#include "aifnav/planner/snapshot.hpp"

#include <cmath>
#include <stdexcept>

#include "aifnav/kernels/kernels.hpp"

namespace aifnav {

std::vector<double> PreferenceModel::log_preference(const std::vector<int>& colour_of_observation) const {
    const std::size_t n = colour_of_observation.size();
    std::vector<double> z(n, 0.0);
    if (goal_colour)
        for (std::size_t o = 0; o < n; ++o)
            if (colour_of_observation[o] == *goal_colour) z[o] = goal_strength;
    double denom = 0.0;
    for (double v : z) denom += std::exp(v);
    const double log_denom = std::log(denom);
    for (double& v : z) v -= log_denom;
    return z;
}

void PreferenceModel::validate() const {
    if (!(utility_weight >= 0.0)) throw std::invalid_argument("preference: utility weight must be >= 0");
    if (!(collision_epsilon > 0.0 && collision_epsilon < 1.0))
        throw std::invalid_argument("preference: collision epsilon must lie in (0,1)");
}

ModelSnapshot make_snapshot(const GenerativeModel& model, const PreferenceModel& prefs,
                            const std::vector<int>& colour_of_observation) {
    if (colour_of_observation.size() != model.num_observations())
        throw std::invalid_argument("snapshot: vocabulary size differs from observation dimension");
    ModelSnapshot snap;
    const std::size_t ns = model.num_states();
    const std::size_t no = model.num_observations();
    const std::size_t np = model.num_poses();
    snap.n_states = ns;
    snap.n_obs = no;
    snap.n_poses = np;

    snap.obs.resize(no * ns);
    snap.obs_entropy.resize(ns);
    snap.pose_by_pose.assign(np * ns, 0.0);
    const auto& oc = model.observation_counts();
    for (std::size_t s = 0; s < ns; ++s) {
        const auto col = oc.normalised_column(s, no);
        std::copy(col.begin(), col.end(), snap.obs.begin() + static_cast<std::ptrdiff_t>(s * no));
        snap.obs_entropy[s] = kernels::entropy(col.data(), no);
        const auto pcol = model.pose_column(s);
        for (std::size_t p = 0; p < np; ++p) snap.pose_by_pose[p * ns + s] = pcol[p];
    }
    for (Action a : kAllActions) {
        auto& t = snap.trans[index_of(a)];
        t.resize(ns * ns);
        for (std::size_t prev = 0; prev < ns; ++prev) {
            if (a == Action::Stay) {
                for (std::size_t next = 0; next < ns; ++next) t[prev * ns + next] = next == prev ? 1.0 : 0.0;
                continue;
            }
            const auto col = model.transition_column(prev, a);
            std::copy(col.begin(), col.end(), t.begin() + static_cast<std::ptrdiff_t>(prev * ns));
        }
    }

    const auto& g = model.pose_graph();
    snap.moves.resize(np);
    snap.pose_novelty.assign(np, 0.0);
    // First colour reading of an unobserved state: any known colour or a new one.
    const double first_reading = std::log(static_cast<double>(no) + 1.0);
    for (std::size_t p = 0; p < np; ++p) {
        if (auto s = model.anchored_state(p); s && !model.observed(*s)) snap.pose_novelty[p] += first_reading;
        for (Action a : kMoves) {
            PoseMove m{p, 0.0, 0.0};
            const auto e = g.edge(p, a);
            if (e.kind == EdgeKind::Unknown) snap.pose_novelty[p] += std::log(2.0);
            if (e.kind == EdgeKind::Open) {
                m = {*e.target, 1.0, 0.0};
            } else if (e.kind == EdgeKind::Blocked) {
                m = {p, 0.0, 1.0};
            } else if (auto t = g.find(displaced(g.pose(p), a))) {
                // Not sensed yet, but the pose beyond is imagined: expect a door.
                m = {*t, 1.0, 0.0};
            } else {
                // Nothing is known beyond: wall or door alike.
                m = {p, 0.0, 0.5};
            }
            snap.moves[p][index_of(a)] = m;
        }
    }

    snap.log_preference = prefs.log_preference(colour_of_observation);
    snap.utility_weight = prefs.utility_weight;
    snap.log_eps = std::log(prefs.collision_epsilon);
    snap.log_one_minus_eps = std::log1p(-prefs.collision_epsilon);
    return snap;
}

}  // namespace aifnav
