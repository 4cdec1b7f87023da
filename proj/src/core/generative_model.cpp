#include "aifnav/core/generative_model.hpp"

#include <stdexcept>

#include "aifnav/kernels/kernels.hpp"

namespace aifnav {

GenerativeModel::GenerativeModel(ModelConfig cfg, int) : cfg_(cfg) {}

GenerativeModel::GenerativeModel(ModelConfig cfg) : cfg_(cfg) {
    if (!(cfg_.count_floor > 0.0)) throw std::invalid_argument("model: count floor must be positive");
    constexpr std::size_t kInitial = 2;
    n_states_ = 1;
    n_obs_ = 1;
    obs_ = DirichletCounts(kInitial, kInitial, cfg_.count_floor, cfg_.count_floor);
    obs_.set(0, 0, cfg_.initial_count);
    for (Action a : kAllActions) {
        auto& t = trans_[index_of(a)];
        t = DirichletCounts(kInitial, kInitial, cfg_.count_floor, cfg_.count_floor);
        if (a == Action::Stay)
            for (std::size_t s = 0; s < kInitial; ++s) t.set(s, s, cfg_.stay_prior);
    }
    const auto origin = graph_.add_pose({0, 0});
    pose_ = DirichletCounts(1, kInitial, cfg_.pose_floor, cfg_.pose_floor);
    pose_.set(origin.index, 0, cfg_.initial_count);
}

GenerativeModel GenerativeModel::from_parts(ModelConfig cfg, std::size_t n_states, std::size_t n_obs,
                                            DirichletCounts obs, DirichletCounts pose,
                                            std::array<DirichletCounts, kNumActions> trans, PoseGraph graph) {
    if (n_states == 0 || n_obs == 0) throw std::invalid_argument("model: empty dimensions");
    if (obs.cols() < n_states || obs.rows() < n_obs) throw std::invalid_argument("model: A_o shape");
    if (pose.cols() != obs.cols() || pose.rows() != graph.size()) throw std::invalid_argument("model: A_p shape");
    for (const auto& t : trans)
        if (t.rows() != obs.cols() || t.cols() != obs.cols()) throw std::invalid_argument("model: B_s shape");
    GenerativeModel m(cfg, 0);
    m.n_states_ = n_states;
    m.n_obs_ = n_obs;
    m.obs_ = std::move(obs);
    m.pose_ = std::move(pose);
    m.trans_ = std::move(trans);
    m.graph_ = std::move(graph);
    return m;
}

void GenerativeModel::check_state(std::size_t s) const {
    if (s >= n_states_) throw std::out_of_range("model: state index out of range");
}

std::vector<double> GenerativeModel::observation_column(std::size_t s) const {
    check_state(s);
    return obs_.normalised_column(s, n_obs_);
}

std::vector<double> GenerativeModel::observation_likelihood(std::size_t o) const {
    if (o >= n_obs_) throw std::out_of_range("model: observation index out of range");
    std::vector<double> out(n_states_);
    for (std::size_t s = 0; s < n_states_; ++s) out[s] = obs_.at(o, s) / obs_.column_total(s, n_obs_);
    return out;
}

std::vector<double> GenerativeModel::pose_column(std::size_t s) const {
    check_state(s);
    return pose_.normalised_column(s, pose_.rows());
}

std::vector<double> GenerativeModel::pose_likelihood(std::size_t p) const {
    if (p >= num_poses()) throw std::out_of_range("model: pose index out of range");
    std::vector<double> out(n_states_, 0.0);
    for (std::size_t s = 0; s < n_states_; ++s) {
        const double total = pose_.column_total(s, pose_.rows());
        if (total > 0.0) out[s] = pose_.at(p, s) / total;
    }
    return out;
}

std::vector<double> GenerativeModel::transition_column(std::size_t prev, Action a) const {
    check_state(prev);
    return trans_[index_of(a)].normalised_column(prev, n_states_);
}

double GenerativeModel::transition_prob(std::size_t next, std::size_t prev, Action a) const {
    check_state(next);
    check_state(prev);
    const auto& t = trans_[index_of(a)];
    return t.at(next, prev) / t.column_total(prev, n_states_);
}

std::vector<double> GenerativeModel::states_given_pose(std::size_t p) const {
    auto w = pose_likelihood(p);
    kernels::normalise(w.data(), w.size());
    return w;
}

std::optional<std::size_t> GenerativeModel::anchored_state(std::size_t p) const {
    const auto w = states_given_pose(p);
    std::size_t best = 0;
    for (std::size_t s = 1; s < w.size(); ++s)
        if (w[s] > w[best]) best = s;
    if (w.empty() || w[best] < cfg_.anchor_threshold) return std::nullopt;
    return best;
}

bool GenerativeModel::observed(std::size_t s) const {
    check_state(s);
    return obs_.column_total(s, n_obs_) >= obs_.floor() * static_cast<double>(n_obs_) + 0.5;
}

std::optional<std::size_t> GenerativeModel::map_pose(std::size_t s) const {
    check_state(s);
    std::optional<std::size_t> best;
    for (std::size_t p = 0; p < pose_.rows(); ++p)
        if (pose_.at(p, s) > 0.0 && (!best || pose_.at(p, s) > pose_.at(*best, s))) best = p;
    return best;
}

ExpandResult GenerativeModel::add_observation() {
    const std::size_t idx = n_obs_;
    if (idx < obs_.rows())
        obs_.fill_row(idx, cfg_.count_floor);
    else
        obs_.append_row(cfg_.count_floor);
    ++n_obs_;
    return {idx, true};
}

ExpandResult GenerativeModel::add_pose(Pose p) {
    const auto r = graph_.add_pose(p);
    if (r.created) pose_.append_row(cfg_.pose_floor);
    return {r.index, r.created};
}

ExpandResult GenerativeModel::add_state_at_pose(std::size_t pose_index) {
    if (pose_index >= num_poses()) throw std::out_of_range("model: unknown pose");
    if (auto s = anchored_state(pose_index)) return {*s, false};
    const std::size_t idx = n_states_;
    if (idx >= obs_.cols()) {
        obs_.append_col(cfg_.count_floor);
        pose_.append_col(cfg_.pose_floor);
        for (auto& t : trans_) {
            t.append_row(cfg_.count_floor);
            t.append_col(cfg_.count_floor);
        }
    }
    obs_.fill_col(idx, cfg_.count_floor);
    pose_.fill_col(idx, cfg_.pose_floor);
    pose_.set(pose_index, idx, cfg_.initial_count);
    for (Action a : kAllActions) {
        auto& t = trans_[index_of(a)];
        t.fill_row(idx, cfg_.count_floor);
        t.fill_col(idx, cfg_.count_floor);
        if (a == Action::Stay) t.set(idx, idx, cfg_.stay_prior);
    }
    ++n_states_;
    return {idx, true};
}

ExpandResult expand_model(GenerativeModel& model, NewObservation) { return model.add_observation(); }
ExpandResult expand_model(GenerativeModel& model, NewPose req) { return model.add_pose(req.pose); }
ExpandResult expand_model(GenerativeModel& model, NewStateAtPose req) {
    return model.add_state_at_pose(req.pose_index);
}

}  // namespace aifnav
