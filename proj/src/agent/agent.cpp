#include "aifnav/agent/agent.hpp"

#include <stdexcept>

#include "aifnav/kernels/kernels.hpp"
#include "aifnav/planner/efe.hpp"

namespace aifnav {
namespace {

// Evidence below what an uninformative column would give is a contradiction.
constexpr double kEvidenceSlack = 1e-6;

Categorical extended(const Categorical& c, std::size_t n) {
    if (c.size() >= n) return c;
    std::vector<double> p = c.probs();
    p.resize(n, 0.0);
    return Categorical(std::move(p));
}

}  // namespace

std::string_view to_string(LocalisationMode m) { return m == LocalisationMode::Confident ? "Confident" : "Lost"; }

void AgentConfig::validate() const {
    planner.validate();
    preference.validate();
    if (!(confidence_gate > 0.0 && confidence_gate <= 1.0))
        throw std::invalid_argument("agent: confidence gate must lie in (0,1]");
    if (!(model.count_floor > 0.0)) throw std::invalid_argument("agent: count floor must be positive");
}

Agent::Agent(AgentConfig config, const Observation& first)
    : cfg_((config.validate(), config)), model_(cfg_.model), planner_(cfg_.planner), rng_(cfg_.planner.seed) {
    colours_.push_back(first.colour);
    vocabulary_.emplace(first.colour, 0);
    belief_.states = Categorical::one_hot(1, 0);
    belief_.poses = Categorical::one_hot(1, 0);
    belief_.confidence = 1.0;
    flags_ = first.flags;
    imagine_frontier();
}

std::optional<std::size_t> Agent::observation_index(int colour) const {
    auto it = vocabulary_.find(colour);
    if (it == vocabulary_.end()) return std::nullopt;
    return it->second;
}

std::size_t Agent::register_colour(int colour) {
    if (auto idx = observation_index(colour)) return *idx;
    const auto r = model_.add_observation();
    colours_.push_back(colour);
    vocabulary_.emplace(colour, r.index);
    return r.index;
}

void Agent::grow_belief() {
    belief_.states = extended(belief_.states, model_.num_states());
    belief_.poses = extended(belief_.poses, model_.num_poses());
}

std::optional<Pose> Agent::map_pose() const {
    if (mode_ == LocalisationMode::Confident) return model_.pose_graph().pose(pose_);
    if (belief_.poses.empty()) return std::nullopt;
    return model_.pose_graph().pose(belief_.poses.argmax());
}

void Agent::set_preference(std::optional<int> colour, double weight) {
    if (!(weight >= 0.0)) throw std::invalid_argument("set_preference: weight must be >= 0");
    cfg_.preference.goal_colour = colour;
    cfg_.preference.utility_weight = weight;
}

ModelSnapshot Agent::snapshot() const { return make_snapshot(model_, cfg_.preference, colours_); }

Decision Agent::plan() {
    const ModelSnapshot snap = snapshot();
    return planner_.decide(belief_, snap, rng_);
}

void Agent::learn_transition(const Categorical& q_prev, Action action, bool collided, std::size_t prev_pose) {
    if (!collided) {
        update_transition_counts(model_, q_prev, belief_.states, action, Situation::Possible, cfg_.rates);
        return;
    }
    const auto& graph = model_.pose_graph();
    if (auto t = graph.find(displaced(graph.pose(prev_pose), action)))
        if (auto st = model_.anchored_state(*t))
            update_transition_counts(model_, q_prev, Categorical::one_hot(model_.num_states(), *st), action,
                                     Situation::Impossible, cfg_.rates);
    update_transition_counts(model_, q_prev, q_prev, action, Situation::Possible, cfg_.rates, false);
}

void Agent::imagine_frontier() {
    if (mode_ != LocalisationMode::Confident) return;
    const std::size_t here = pose_;
    const Pose at = model_.pose_graph().pose(here);
    for (Action a : kMoves) {
        const std::size_t s_star = belief_.states.argmax();
        auto me = [&] { return Categorical::one_hot(model_.num_states(), s_star); };
        if (flags_[index_of(a)]) {
            model_.pose_graph().set_blocked(here, a);
            if (auto t = model_.pose_graph().find(displaced(at, a)))
                if (auto st = model_.anchored_state(*t); st && *st != s_star)
                    update_transition_counts(model_, me(), Categorical::one_hot(model_.num_states(), *st), a,
                                             Situation::Impossible, cfg_.rates);
            if (model_.transition_prob(s_star, s_star, a) < 0.5)
                update_transition_counts(model_, me(), me(), a, Situation::Possible, cfg_.rates, false);
            continue;
        }
        const auto target = model_.add_pose(displaced(at, a));
        model_.pose_graph().set_open(here, a);
        if (target.created) grow_belief();
        auto st = model_.anchored_state(target.index);
        if (!st) {
            const double keep =
                position_likelihood_efe(model_, target.index, 0.0, cfg_.preference.collision_epsilon);
            if (keep < 0.5) continue;
            st = model_.add_state_at_pose(target.index).index;
            grow_belief();
        } else if (model_.transition_prob(*st, s_star, a) >= 0.5) {
            continue;
        }
        update_transition_counts(model_, me(), Categorical::one_hot(model_.num_states(), *st), a,
                                 Situation::Imagined, cfg_.rates);
    }
}

const StepRecord& Agent::observe(Action action, const Observation& obs, const Decision* decision, bool idle) {
    const Categorical q_prev = belief_.states;
    const std::size_t prev_pose = pose_;
    const bool moving = action != Action::Stay;
    const bool collided = moving && flags_[index_of(action)];
    const bool was_confident = mode_ == LocalisationMode::Confident;
    const std::size_t o = register_colour(obs.colour);
    const double n_obs = static_cast<double>(model_.num_observations());

    const Categorical predictive = (!moving || collided) ? q_prev : predict_state(q_prev, action, model_);

    InferenceResult inf;
    bool pose_factor = false;
    if (was_confident) {
        std::optional<std::size_t> new_pose = prev_pose;
        if (moving && !collided) {
            const auto e = model_.pose_graph().edge(prev_pose, action);
            new_pose = e.kind == EdgeKind::Open ? e.target : std::nullopt;
        }
        if (new_pose) {
            auto anchored = model_.pose_likelihood(*new_pose);
            kernels::hadamard(predictive.data(), anchored.data(), anchored.data(), anchored.size());
            const double mass = kernels::sum(anchored.data(), anchored.size());
            const auto lik = model_.observation_likelihood(o);
            const double evidence = mass > 0.0 ? kernels::dot(anchored.data(), lik.data(), lik.size()) / mass : 0.0;
            if (evidence * n_obs >= 1.0 - kEvidenceSlack) {
                inf = infer_state(predictive, o, *new_pose, model_);
                if (!inf.contradiction) {
                    pose_factor = true;
                    pose_ = *new_pose;
                }
            }
        }
    }
    if (!pose_factor) {
        const Categorical prior = was_confident ? Categorical::uniform(model_.num_states()) : predictive;
        inf = infer_state(prior, o, std::nullopt, model_);
        if (inf.evidence * n_obs < 1.0 - kEvidenceSlack)
            inf = infer_state(Categorical::uniform(model_.num_states()), o, std::nullopt, model_);
    }

    belief_ = inf.belief;
    flags_ = obs.flags;

    StepRecord rec;
    rec.step = steps_;
    rec.action = action;
    rec.colour = obs.colour;
    rec.flags = obs.flags;
    rec.vfe = inf.free_energy;
    rec.idle = idle;
    if (decision != nullptr) {
        rec.policy_id = decision->chosen;
        rec.policy = policy_label(decision->policies.at(decision->chosen));
    }

    if (pose_factor && belief_.confidence >= cfg_.confidence_gate) {
        rec.mode = LocalisationMode::Confident;
        update_observation_counts(model_, belief_.states, o, cfg_.rates, false);
        update_pose_counts(model_, belief_.states, pose_, cfg_.rates, false);
        if (moving) learn_transition(q_prev, action, collided, prev_pose);
        rec.learned = true;
        imagine_frontier();
    } else {
        rec.mode = LocalisationMode::Lost;
        const std::size_t s_star = belief_.states.argmax();
        const auto anchor = model_.map_pose(s_star);
        if (belief_.confidence >= cfg_.confidence_gate && anchor) {
            mode_ = LocalisationMode::Confident;
            pose_ = *anchor;
            belief_.poses = Categorical::one_hot(model_.num_poses(), pose_);
        } else {
            mode_ = LocalisationMode::Lost;
        }
    }

    rec.map_pose = map_pose();
    rec.posterior = belief_.states.probs();
    rec.confidence = belief_.confidence;
    records_.push_back(std::move(rec));
    return records_.back();
}

const StepRecord& Agent::step(const Environment& env) {
    Decision d = plan();
    const Action a = d.action();
    const Observation obs = env(a);
    ++steps_;
    const StepRecord& rec = observe(a, obs, &d);
    if (cfg_.keep_decisions) last_decision_ = std::move(d);
    return rec;
}

const StepRecord& Agent::act(Action action, const Environment& env) {
    const Observation obs = env(action);
    ++steps_;
    return observe(action, obs, nullptr, false);
}

const StepRecord& Agent::perceive_idle(const Observation& obs) { return observe(Action::Stay, obs, nullptr, true); }

nlohmann::json Agent::export_map() const {
    nlohmann::json nodes = nlohmann::json::array();
    nlohmann::json edges = nlohmann::json::array();
    for (std::size_t s = 0; s < model_.num_states(); ++s) {
        const auto col = model_.observation_column(s);
        std::size_t best = 0;
        for (std::size_t o = 1; o < col.size(); ++o)
            if (col[o] > col[best]) best = o;
        nlohmann::json node{{"state", s}, {"colour", colours_[best]}, {"colour_p", col[best]}};
        if (auto p = model_.map_pose(s)) {
            const Pose& pose = model_.pose_graph().pose(*p);
            node["pose"] = {pose.row, pose.col};
        } else {
            node["pose"] = nullptr;
        }
        nodes.push_back(std::move(node));
        for (Action a : kMoves) {
            const auto t = model_.transition_column(s, a);
            std::size_t arg = 0;
            for (std::size_t k = 1; k < t.size(); ++k)
                if (t[k] > t[arg]) arg = k;
            edges.push_back({{"from", s}, {"action", std::string(to_string(a))}, {"to", arg}, {"p", t[arg]}});
        }
    }
    return {{"schema", "aifnav.map/1"}, {"nodes", std::move(nodes)}, {"edges", std::move(edges)}};
}

}  // namespace aifnav
