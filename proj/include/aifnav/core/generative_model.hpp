#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "aifnav/core/dirichlet.hpp"
#include "aifnav/core/pose_graph.hpp"
#include "aifnav/core/types.hpp"

namespace aifnav {

struct ModelConfig {
    double count_floor = 0.05;  // A_o and B_s
    double pose_floor = 0.0;    // A_p keeps structural zeros
    double initial_count = 1.0;
    double stay_prior = 10.0;
    // max_s P(s|p) below this means no state is anchored at p
    double anchor_threshold = 0.5;

    bool operator==(const ModelConfig&) const = default;
};

struct ExpandResult {
    std::size_t index;
    bool created;  // false: the entity already existed, nothing changed
};

// A_o = P(o|s), A_p = P(p|s), B_s = P(s'|s,a) as Dirichlet counts, plus the
// pose graph B_p. Tensors start at 2x2 with one active state and one active
// observation; the spare slot is consumed by the first expansion.
class GenerativeModel {
public:
    explicit GenerativeModel(ModelConfig cfg = {});

    const ModelConfig& config() const { return cfg_; }
    std::size_t num_states() const { return n_states_; }
    std::size_t num_observations() const { return n_obs_; }
    std::size_t num_poses() const { return graph_.size(); }
    std::size_t state_capacity() const { return obs_.cols(); }
    std::size_t observation_capacity() const { return obs_.rows(); }

    // Normalised views over the active extent.
    std::vector<double> observation_column(std::size_t s) const;  // P(.|s)
    std::vector<double> observation_likelihood(std::size_t o) const;  // P(o|s) for all s
    std::vector<double> pose_column(std::size_t s) const;  // P(.|s)
    std::vector<double> pose_likelihood(std::size_t p) const;  // P(p|s) for all s
    std::vector<double> transition_column(std::size_t prev, Action a) const;
    double transition_prob(std::size_t next, std::size_t prev, Action a) const;

    // P(s|p) proportional to P(p|s); all zeros when no state has mass at p.
    std::vector<double> states_given_pose(std::size_t p) const;
    std::optional<std::size_t> anchored_state(std::size_t p) const;
    // argmax_p P(p|s), lowest index on ties; nullopt when the column is empty.
    std::optional<std::size_t> map_pose(std::size_t s) const;
    // A_o column holds at least half an observation above its floor.
    bool observed(std::size_t s) const;

    const DirichletCounts& observation_counts() const { return obs_; }
    const DirichletCounts& pose_counts() const { return pose_; }
    const DirichletCounts& transition_counts(Action a) const { return trans_[index_of(a)]; }
    DirichletCounts& observation_counts() { return obs_; }
    DirichletCounts& pose_counts() { return pose_; }
    DirichletCounts& transition_counts(Action a) { return trans_[index_of(a)]; }

    const PoseGraph& pose_graph() const { return graph_; }
    PoseGraph& pose_graph() { return graph_; }

    ExpandResult add_observation();
    ExpandResult add_pose(Pose p);
    // Duplicate when a state is already anchored at the pose.
    ExpandResult add_state_at_pose(std::size_t pose_index);

    // Rebuilds a model from serialised parts; validates shapes.
    static GenerativeModel from_parts(ModelConfig cfg, std::size_t n_states, std::size_t n_obs,
                                      DirichletCounts obs, DirichletCounts pose,
                                      std::array<DirichletCounts, kNumActions> trans, PoseGraph graph);

    bool operator==(const GenerativeModel&) const = default;

private:
    GenerativeModel(ModelConfig cfg, int);
    void check_state(std::size_t s) const;

    ModelConfig cfg_;
    std::size_t n_states_ = 0;
    std::size_t n_obs_ = 0;
    DirichletCounts obs_;   // [obs][state]
    DirichletCounts pose_;  // [pose][state]
    std::array<DirichletCounts, kNumActions> trans_;  // per action [next][prev]
    PoseGraph graph_;
};

// Free-function form of the three expansion requests.
struct NewObservation {};
struct NewPose {
    Pose pose;
};
struct NewStateAtPose {
    std::size_t pose_index;
};

ExpandResult expand_model(GenerativeModel& model, NewObservation);
ExpandResult expand_model(GenerativeModel& model, NewPose req);
ExpandResult expand_model(GenerativeModel& model, NewStateAtPose req);

}  // namespace aifnav
