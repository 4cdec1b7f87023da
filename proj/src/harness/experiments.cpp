#include "aifnav/harness/experiments.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <stdexcept>

#include "aifnav/harness/oracle.hpp"
#include "aifnav/planner/trace.hpp"

namespace aifnav {
namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Independent stream for protocol choices so they never perturb the planner.
std::mt19937_64 protocol_rng(std::uint64_t seed) { return std::mt19937_64(seed ^ 0x6a09e667f3bcc909ULL); }

std::size_t draw(std::mt19937_64& rng, std::size_t n) {
    return static_cast<std::size_t>(std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng));
}

AgentConfig seeded(const ExperimentSpec& spec, std::uint64_t seed) {
    AgentConfig cfg = spec.agent;
    cfg.planner.seed = seed;
    return cfg;
}

class EpisodeLog {
public:
    EpisodeLog(const ExperimentSpec& spec, std::uint64_t seed, const std::string& tag) {
        if (!spec.log_dir) return;
        std::filesystem::create_directories(*spec.log_dir);
        stem_ = *spec.log_dir + "/" + std::string(to_string(spec.kind)) + "_" + spec.environment + "_seed" +
                std::to_string(seed) + tag;
        steps_.open(stem_ + ".steps.jsonl");
        trace_.open(stem_ + ".trace.jsonl");
    }

    void record(const Agent& agent, const StepRecord& rec, bool planned) {
        if (!steps_.is_open()) return;
        steps_ << record_to_json(rec).dump() << '\n';
        if (planned && agent.last_decision()) write_trace_line(trace_, *agent.last_decision(), rec.step);
    }

    void finish(const Agent& agent) {
        if (!steps_.is_open()) return;
        std::ofstream(stem_ + ".map.json") << agent.export_map().dump(2) << '\n';
    }

private:
    std::string stem_;
    std::ofstream steps_;
    std::ofstream trace_;
};

void apply_schedule(const ExperimentSpec& spec, Episode& ep, std::size_t step) {
    for (const auto& s : spec.schedule)
        if (s.step == step) ep.intervene(s.intervention, spec.goal_weight);
}

struct ExploreOutcome {
    std::optional<std::size_t> complete;
    std::optional<std::size_t> visit_all;
};

// Runs until the map is complete or the cap is hit. A null source plans.
ExploreOutcome explore(const ExperimentSpec& spec, Episode& ep, std::size_t cap, const ActionSource* source,
                       EpisodeLog& log, bool use_schedule) {
    ExploreOutcome out;
    const std::size_t n_rooms = ep.env().layout().rooms().size();
    if (ep.visited().size() == n_rooms) out.visit_all = 0;
    if (map_complete(ep.agent(), ep.env().layout(), spec.completion_threshold)) {
        out.complete = 0;
        return out;
    }
    for (std::size_t t = 0; t < cap; ++t) {
        if (use_schedule) apply_schedule(spec, ep, t);
        const StepRecord& rec = source ? ep.step_with((*source)(ep)) : ep.step();
        log.record(ep.agent(), rec, source == nullptr);
        if (!out.visit_all && ep.visited().size() == n_rooms) out.visit_all = t + 1;
        if (map_complete(ep.agent(), ep.env().layout(), spec.completion_threshold)) {
            out.complete = t + 1;
            break;
        }
    }
    return out;
}

// Steps until the agent chooses Stay at the goal; nullopt at the cap.
std::optional<std::size_t> seek_goal(const ExperimentSpec& spec, Episode& ep, std::size_t cap, EpisodeLog& log,
                                     bool use_schedule) {
    for (std::size_t t = 0; t < cap; ++t) {
        if (use_schedule) apply_schedule(spec, ep, t);
        const StepRecord& rec = ep.step();
        log.record(ep.agent(), rec, true);
        if (stayed_at_goal(ep, rec)) return t;
    }
    return std::nullopt;
}

std::vector<RoomCoord> rooms_with_colour(const Layout& layout, int colour) {
    std::vector<RoomCoord> out;
    for (const auto& r : layout.rooms())
        if (layout.colour(r) == colour) out.push_back(r);
    return out;
}

std::optional<std::size_t> distance_to_colour(const Layout& layout, RoomCoord from, int colour,
                                              const std::set<Door>& sealed = {}) {
    std::optional<std::size_t> best;
    for (const auto& r : rooms_with_colour(layout, colour)) {
        const auto d = shortest_path(layout, from, r, sealed);
        if (d && (!best || *d < *best)) best = d;
    }
    return best;
}

// True if walking `policy` on the bare lattice from `from` steps across `door`.
bool crosses(const Policy& policy, RoomCoord from, const Door& door) {
    RoomCoord at = from;
    for (Action a : policy) {
        if (a == Action::Stay) continue;
        const RoomCoord next = moved(at, a);
        if (make_door(at, next) == door) return true;
        at = next;
    }
    return false;
}

double crossing_probability(const Decision& d, RoomCoord from, const Door& door) {
    double p = 0.0;
    for (std::size_t i = 0; i < d.policies.size(); ++i)
        if (crosses(d.policies[i], from, door)) p += d.distribution[i];
    return p;
}

RunResult begin(const ExperimentSpec& spec, const Layout& layout) {
    RunResult r;
    r.kind = spec.kind;
    r.environment = spec.environment;
    r.oracle = layout.oracle_coverage ? static_cast<std::size_t>(*layout.oracle_coverage) : oracle_coverage(layout);
    return r;
}

}  // namespace

std::string_view to_string(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::Exploration: return "explore";
        case ExperimentKind::Goal: return "goal";
        case ExperimentKind::Tolman: return "tolman";
        case ExperimentKind::Remap: return "remap";
    }
    return "?";
}

ExperimentKind parse_experiment(std::string_view name) {
    for (auto k : {ExperimentKind::Exploration, ExperimentKind::Goal, ExperimentKind::Tolman, ExperimentKind::Remap})
        if (to_string(k) == name) return k;
    throw std::invalid_argument("unknown experiment kind: " + std::string(name));
}

ActionSource random_walk(std::uint64_t seed) {
    auto rng = std::make_shared<std::mt19937_64>(seed ^ 0xbb67ae8584caa73bULL);
    return [rng](const Episode&) { return kMoves[draw(*rng, kNumMoves)]; };
}

void validate(const ExperimentSpec& spec) {
    if (spec.seeds.empty()) throw std::invalid_argument("experiment: seeds must be non-empty");
    spec.agent.validate();
    const Layout layout = load_environment(spec.environment);
    Environment scratch(layout);
    for (const auto& s : spec.schedule) scratch.apply(s.intervention);
    for (const auto& r : spec.release_rooms)
        if (!layout.is_room(r)) throw std::invalid_argument("experiment: release room is not a room");
    if (!(spec.completion_threshold > 0.0 && spec.completion_threshold <= 1.0))
        throw std::invalid_argument("experiment: completion threshold must lie in (0,1]");
    if (spec.kind == ExperimentKind::Tolman)
        for (const char* key : {"A", "B", "R2", "R3"})
            if (!layout.block_points.count(key))
                throw std::invalid_argument(std::string("tolman: layout lacks block point ") + key);
    if (spec.kind == ExperimentKind::Remap && !layout.block_points.count("A"))
        throw std::invalid_argument("remap: layout lacks block point A");
    if ((spec.kind == ExperimentKind::Tolman || spec.kind == ExperimentKind::Remap) && !layout.goal_colour)
        throw std::invalid_argument("experiment: layout has no goal colour");
}

RunResult run_experiment(const ExperimentSpec& spec) {
    switch (spec.kind) {
        case ExperimentKind::Exploration: return run_exploration(spec);
        case ExperimentKind::Goal: return run_goal(spec);
        case ExperimentKind::Tolman: return run_tolman(spec);
        case ExperimentKind::Remap: return run_remap(spec);
    }
    throw std::invalid_argument("unknown experiment kind");
}

RunResult run_exploration(const ExperimentSpec& spec) {
    validate(spec);
    const Layout layout = load_environment(spec.environment);
    RunResult result = begin(spec, layout);
    const auto t0 = Clock::now();
    for (std::uint64_t seed : spec.seeds) {
        SeedResult sr;
        sr.seed = seed;
        const auto ts = Clock::now();
        {
            Episode ep(layout, seeded(spec, seed));
            EpisodeLog log(spec, seed, "");
            const auto out = explore(spec, ep, spec.explore_cap, nullptr, log, true);
            sr.steps = out.complete;
            sr.steps_visit_all = out.visit_all;
            sr.detail["states"] = ep.agent().model().num_states();
            log.finish(ep.agent());
        }
        sr.seconds = since(ts);
        if (spec.with_baseline) {
            Episode ep(layout, seeded(spec, seed));
            EpisodeLog log(spec, seed, ".baseline");
            const ActionSource walk = random_walk(seed);
            sr.baseline_steps = explore(spec, ep, 5 * spec.explore_cap, &walk, log, true).complete;
        }
        result.seeds.push_back(std::move(sr));
    }
    result.seconds = since(t0);
    return result;
}

RunResult run_goal(const ExperimentSpec& spec) {
    validate(spec);
    const Layout layout = load_environment(spec.environment);
    RunResult result = begin(spec, layout);
    const auto t0 = Clock::now();
    const auto rooms = layout.rooms();
    for (std::uint64_t seed : spec.seeds) {
        SeedResult sr;
        sr.seed = seed;
        const auto ts = Clock::now();
        auto prng = protocol_rng(seed);
        const int goal = layout.goal_colour ? *layout.goal_colour : layout.colour(rooms[draw(prng, rooms.size())]);
        std::vector<RoomCoord> pool = spec.release_rooms;
        if (pool.empty())
            for (const auto& r : rooms)
                if (layout.colour(r) != goal) pool.push_back(r);
        if (pool.empty()) pool = rooms;
        const RoomCoord release = pool[draw(prng, pool.size())];

        Episode ep(layout, seeded(spec, seed));
        EpisodeLog log(spec, seed, "");
        if (spec.with_prior) {
            const auto out = explore(spec, ep, spec.explore_cap, nullptr, log, false);
            sr.detail["explore_steps"] = out.complete ? nlohmann::json(*out.complete) : nlohmann::json(nullptr);
            ep.intervene(SetGoal{goal}, spec.goal_weight);
            // Home once so the release is a genuine relocation away from the goal.
            sr.detail["homing_steps"] = nlohmann::json(seek_goal(spec, ep, spec.goal_cap, log, false).value_or(0));
        } else {
            ep.intervene(SetGoal{goal}, spec.goal_weight);
        }
        ep.intervene(KidnapTo{release});
        log.record(ep.agent(), ep.agent().records().back(), false);
        sr.detail["release_confidence"] = ep.agent().records().back().confidence;
        sr.shortest = distance_to_colour(layout, release, goal);

        // Observations (the release perception included) until confidence > gate.
        std::optional<std::size_t> localised;
        if (ep.agent().records().back().confidence > spec.agent.confidence_gate) localised = 1;
        for (std::size_t t = 0; t < spec.goal_cap; ++t) {
            apply_schedule(spec, ep, t);
            const StepRecord& rec = ep.step();
            log.record(ep.agent(), rec, true);
            if (!localised && rec.confidence > spec.agent.confidence_gate) localised = t + 2;
            if (stayed_at_goal(ep, rec)) {
                sr.steps = t;
                break;
            }
        }
        log.finish(ep.agent());
        sr.detail["goal_colour"] = goal;
        sr.detail["release"] = {release.row, release.col};
        sr.detail["observations_to_localise"] = localised ? nlohmann::json(*localised) : nlohmann::json(nullptr);
        sr.seconds = since(ts);
        result.seeds.push_back(std::move(sr));
    }
    result.seconds = since(t0);
    return result;
}

RunResult run_tolman(const ExperimentSpec& spec) {
    validate(spec);
    const Layout layout = load_environment(spec.environment);
    RunResult result = begin(spec, layout);
    result.route_counts.assign(3, {0, 0, 0, 0});
    const Door door_a = layout.block_points.at("A");
    const Door door_b = layout.block_points.at("B");
    const std::array<Door, 3> markers{door_a, layout.block_points.at("R2"), layout.block_points.at("R3")};
    const auto t0 = Clock::now();
    for (std::uint64_t seed : spec.seeds) {
        SeedResult sr;
        sr.seed = seed;
        const auto ts = Clock::now();
        Episode ep(layout, seeded(spec, seed));
        EpisodeLog log(spec, seed, "");
        ep.intervene(SetGoal{*layout.goal_colour}, spec.goal_weight);
        nlohmann::json phases = nlohmann::json::array();
        for (int phase = 0; phase < 3; ++phase) {
            if (phase == 1) ep.intervene(BlockDoor{door_a});
            if (phase == 2) {
                ep.intervene(UnblockDoor{door_a});
                ep.intervene(BlockDoor{door_b});
            }
            std::array<int, 4> counts{0, 0, 0, 0};
            nlohmann::json runs = nlohmann::json::array();
            for (int run = 0; run < spec.runs_per_phase; ++run) {
                if (phase > 0 || run > 0) ep.intervene(KidnapTo{layout.start});
                int route = 0;
                std::optional<std::size_t> reached;
                std::string path;
                for (std::size_t t = 0; t < spec.run_length; ++t) {
                    const StepRecord& rec = ep.step();
                    log.record(ep.agent(), rec, true);
                    path += policy_label({rec.action});
                    const RoomCoord from = ep.previous_room();
                    const RoomCoord to = ep.env().state().agent;
                    if (from != to && !reached)
                        for (int m = 0; m < 3; ++m)
                            if (make_door(from, to) == markers[m]) route = m + 1;
                    if (!reached && stayed_at_goal(ep, rec)) reached = t;
                }
                if (reached) {
                    ++counts[route];
                    ++result.route_counts[phase][route];
                }
                runs.push_back({{"route", reached ? nlohmann::json(route) : nlohmann::json(nullptr)},
                                {"steps", reached ? nlohmann::json(*reached) : nlohmann::json(nullptr)},
                                {"actions", path}});
            }
            phases.push_back({{"counts", counts}, {"runs", std::move(runs)}});
        }
        log.finish(ep.agent());
        sr.detail["phases"] = std::move(phases);
        sr.seconds = since(ts);
        result.seeds.push_back(std::move(sr));
    }
    result.seconds = since(t0);
    return result;
}

RunResult run_remap(const ExperimentSpec& spec) {
    validate(spec);
    const Layout layout = load_environment(spec.environment);
    RunResult result = begin(spec, layout);
    const Door sealed = layout.block_points.at("A");
    const int goal = *layout.goal_colour;
    const auto t0 = Clock::now();
    for (std::uint64_t seed : spec.seeds) {
        SeedResult sr;
        sr.seed = seed;
        const auto ts = Clock::now();
        auto prng = protocol_rng(seed);
        const RoomCoord release = spec.release_rooms.empty() ? RoomCoord{layout.rows() - 1, 0}
                                                             : spec.release_rooms[draw(prng, spec.release_rooms.size())];
        Episode ep(layout, seeded(spec, seed));
        EpisodeLog log(spec, seed, "");
        const auto out = explore(spec, ep, spec.explore_cap, nullptr, log, false);
        sr.detail["explore_steps"] = out.complete ? nlohmann::json(*out.complete) : nlohmann::json(nullptr);
        ep.intervene(SetGoal{goal}, spec.goal_weight);
        ep.intervene(KidnapTo{release});
        sr.shortest = distance_to_colour(layout, release, goal, spec.seal ? std::set<Door>{sealed} : std::set<Door>{});

        bool is_sealed = false;
        bool crossed = false;
        std::optional<std::size_t> discovery;  // index into trace
        std::size_t attempts_after = 0;
        std::optional<std::size_t> replan;
        nlohmann::json trace = nlohmann::json::array();
        for (std::size_t t = 0; t < spec.goal_cap; ++t) {
            if (spec.seal && t == 1) {
                ep.intervene(BlockDoor{sealed});
                is_sealed = true;
            }
            const RoomCoord at = ep.env().state().agent;
            if (is_sealed && !discovery && (at == sealed.a || at == sealed.b)) discovery = trace.size();
            const StepRecord& rec = ep.step();
            log.record(ep.agent(), rec, true);
            const Decision& d = *ep.agent().last_decision();
            const bool chosen_crosses = crosses(d.policies[d.chosen], at, sealed);
            trace.push_back({{"step", rec.step}, {"room", {at.row, at.col}},
                             {"p_sealed_path", crossing_probability(d, at, sealed)},
                             {"chosen_crosses", chosen_crosses}});
            if (discovery && !replan && !chosen_crosses) replan = trace.size() - 1 - *discovery;
            const RoomCoord to = ep.env().state().agent;
            if (rec.action != Action::Stay && at != to && make_door(at, to) == sealed) crossed = true;
            if (is_sealed && discovery && rec.action != Action::Stay && make_door(at, moved(at, rec.action)) == sealed)
                ++attempts_after;
            if (stayed_at_goal(ep, rec)) {
                sr.steps = t;
                break;
            }
        }
        sr.detail["route"] = crossed ? "short" : "long";
        sr.detail["discovery_decision"] = discovery ? nlohmann::json(*discovery) : nlohmann::json(nullptr);
        sr.detail["replan_decisions"] = replan ? nlohmann::json(*replan) : nlohmann::json(nullptr);
        sr.detail["attempts_after_discovery"] = attempts_after;
        if (discovery && *discovery > 0 && *discovery < trace.size()) {
            const double before = trace[*discovery - 1]["p_sealed_path"].get<double>();
            const double after = trace[*discovery]["p_sealed_path"].get<double>();
            sr.detail["p_before_discovery"] = before;
            sr.detail["p_after_discovery"] = after;
            sr.detail["trace_decreases"] = after < before;
        }
        sr.detail["trace"] = std::move(trace);

        if (spec.seal && spec.reopen_steps > 0 && sr.steps) {
            ep.intervene(UnblockDoor{sealed});
            ep.intervene(ClearGoal{});
            ep.intervene(KidnapTo{release});
            std::optional<std::size_t> relearned;
            auto sealed_prob = [&] {
                const auto matched = match_rooms(ep.agent(), layout);
                const auto ia = layout.room_index(sealed.a);
                const auto ib = layout.room_index(sealed.b);
                if (!matched[*ia] || !matched[*ib]) return 0.0;
                const Action a = sealed.a.row == sealed.b.row ? Action::Right : Action::Down;
                return ep.agent().model().transition_prob(*matched[*ib], *matched[*ia], a);
            };
            sr.detail["p_sealed_transition_closed"] = sealed_prob();
            for (std::size_t t = 0; t < spec.reopen_steps; ++t) {
                log.record(ep.agent(), ep.step(), true);
                if (!relearned && sealed_prob() >= spec.completion_threshold) relearned = t + 1;
            }
            sr.detail["p_sealed_transition_reopened"] = sealed_prob();
            sr.detail["relearned_after"] = relearned ? nlohmann::json(*relearned) : nlohmann::json(nullptr);
        }
        log.finish(ep.agent());
        sr.seconds = since(ts);
        result.seeds.push_back(std::move(sr));
    }
    result.seconds = since(t0);
    return result;
}

}  // namespace aifnav
