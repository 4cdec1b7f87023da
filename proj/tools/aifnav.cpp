// Command-line front end: batch experiments, oracle lengths and the bridge.

#include <cmath>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "aifnav/bridge/server.hpp"
#include "aifnav/harness/experiments.hpp"
#include "aifnav/harness/oracle.hpp"
#include "aifnav/kernels/kernels.hpp"

namespace fs = std::filesystem;
using namespace aifnav;

namespace {

struct Common {
    std::string env = "3x3";
    int seeds = 20;
    std::uint64_t first_seed = 0;
    int lookahead = 0;  // 0: per-experiment default
    double gamma = 16.0;
    double weight = 2.0;
    std::string strategy = "l-shaped";
    std::string out;
    bool json = false;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("-e,--env", c.env, "Bundled layout name or path to a layout file");
    app->add_option("-n,--seeds", c.seeds, "Number of seeds")->check(CLI::PositiveNumber);
    app->add_option("--first-seed", c.first_seed, "First seed");
    app->add_option("-L,--lookahead", c.lookahead, "Planning horizon (default 6; 14 for tolman)")
        ->check(CLI::Range(1, 14));
    app->add_option("--gamma", c.gamma, "Policy precision")->check(CLI::PositiveNumber);
    app->add_option("-w,--weight", c.weight, "Utility weight once a goal is set")->check(CLI::NonNegativeNumber);
    app->add_option("--strategy", c.strategy, "Policy generator")
        ->check(CLI::IsMember({"exhaustive", "non-returning", "l-shaped"}));
    app->add_option("-o,--out", c.out, "Output directory for tables, logs, traces and maps");
    app->add_flag("--json", c.json, "Print the JSON result instead of the CSV table");
}

ExperimentSpec make_spec(ExperimentKind kind, const Common& c) {
    ExperimentSpec spec;
    spec.kind = kind;
    spec.environment = c.env;
    spec.seeds.clear();
    for (int i = 0; i < c.seeds; ++i) spec.seeds.push_back(c.first_seed + static_cast<std::uint64_t>(i));
    spec.agent.planner.lookahead = c.lookahead > 0 ? c.lookahead : (kind == ExperimentKind::Tolman ? 14 : 6);
    spec.agent.planner.gamma = c.gamma;
    spec.agent.planner.strategy = parse_strategy(c.strategy);
    spec.goal_weight = c.weight;
    if (!c.out.empty()) spec.log_dir = (fs::path(c.out) / "logs").string();
    return spec;
}

struct Moments {
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;
};

Moments moments(const std::vector<double>& xs) {
    Moments m;
    m.n = xs.size();
    if (xs.empty()) return m;
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(xs.size());
    for (double x : xs) m.sd += (x - m.mean) * (x - m.mean);
    m.sd = xs.size() > 1 ? std::sqrt(m.sd / static_cast<double>(xs.size() - 1)) : 0.0;
    return m;
}

template <typename F>
std::vector<double> collect(const RunResult& r, F f) {
    std::vector<double> out;
    for (const auto& s : r.seeds)
        if (auto v = f(s)) out.push_back(static_cast<double>(*v));
    return out;
}

void line(std::ostream& os, const std::string& label, const std::vector<double>& xs, std::size_t total) {
    const auto m = moments(xs);
    os << "  " << std::left << std::setw(22) << label << std::right;
    if (m.n == 0) {
        os << "n/a (0/" << total << ")\n";
        return;
    }
    os << std::fixed << std::setprecision(2) << m.mean << " +- " << m.sd << "  (" << m.n << "/" << total << ")\n";
}

void summarise(std::ostream& os, const RunResult& r) {
    const std::size_t n = r.seeds.size();
    os << to_string(r.kind) << " on " << r.environment << ": " << n << " seeds, oracle " << r.oracle << ", "
       << std::fixed << std::setprecision(2) << r.seconds << " s\n";
    switch (r.kind) {
        case ExperimentKind::Exploration:
            line(os, "steps to complete", collect(r, [](const SeedResult& s) { return s.steps; }), n);
            line(os, "steps to visit all", collect(r, [](const SeedResult& s) { return s.steps_visit_all; }), n);
            line(os, "random walk", collect(r, [](const SeedResult& s) { return s.baseline_steps; }), n);
            break;
        case ExperimentKind::Goal:
        case ExperimentKind::Remap:
            line(os, "steps to goal", collect(r, [](const SeedResult& s) { return s.steps; }), n);
            line(os, "shortest path", collect(r, [](const SeedResult& s) { return s.shortest; }), n);
            break;
        case ExperimentKind::Tolman:
            for (std::size_t p = 0; p < r.route_counts.size(); ++p) {
                const auto& c = r.route_counts[p];
                os << "  phase " << p + 1 << ": route1 " << c[1] << "  route2 " << c[2] << "  route3 " << c[3]
                   << "  other " << c[0] << '\n';
            }
            break;
    }
}

int run(ExperimentKind kind, const Common& c, const std::function<void(ExperimentSpec&)>& tweak) {
    ExperimentSpec spec = make_spec(kind, c);
    tweak(spec);
    if (spec.log_dir) fs::create_directories(*spec.log_dir);
    const RunResult r = run_experiment(spec);
    if (!c.out.empty()) {
        const std::string stem = std::string(to_string(kind)) + "_" + fs::path(c.env).stem().string();
        std::ofstream(fs::path(c.out) / (stem + ".csv")) << result_to_csv(r);
        std::ofstream(fs::path(c.out) / (stem + ".json")) << result_to_json(r).dump(2) << '\n';
        summarise(std::cout, r);
        return 0;
    }
    if (c.json) std::cout << result_to_json(r).dump(2) << '\n';
    else std::cout << result_to_csv(r);
    summarise(std::cerr, r);
    return 0;
}

RoomCoord parse_room(const std::string& text) {
    RoomCoord r;
    char comma = 0;
    std::istringstream is(text);
    if (!(is >> r.row >> comma >> r.col) || comma != ',') throw CLI::ValidationError("room", "expected row,col");
    return r;
}

bridge::Server* g_server = nullptr;

void on_signal(int) {
    if (g_server) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Active-inference room navigation: experiments and session bridge"};
    app.require_subcommand(1);

    Common explore_opts;
    bool no_baseline = false;
    auto* explore = app.add_subcommand("explore", "Learn a map from scratch; optional random-walk baseline");
    add_common(explore, explore_opts);
    explore->add_flag("--no-baseline", no_baseline, "Skip the random-walk baseline");

    Common goal_opts;
    bool naive = false;
    std::vector<std::string> release;
    auto* goal = app.add_subcommand("goal", "Reach the goal colour after a kidnap, with or without a prior map");
    add_common(goal, goal_opts);
    goal->add_flag("--naive", naive, "Do not explore before setting the goal");
    goal->add_option("--release", release, "Release rooms as row,col (one drawn per seed)");

    Common tolman_opts;
    tolman_opts.seeds = 10;
    int runs = 12;
    auto* tolman = app.add_subcommand("tolman", "Three-phase detour protocol on the tolman layout");
    add_common(tolman, tolman_opts);
    tolman_opts.env = "tolman";
    tolman->add_option("--runs", runs, "Runs per phase")->check(CLI::PositiveNumber);

    Common remap_opts;
    remap_opts.env = "donuts";
    std::size_t reopen = 0;
    auto* remap = app.add_subcommand("remap", "Seal the short route mid-run and watch the agent re-plan");
    add_common(remap, remap_opts);
    remap->add_option("--reopen-steps", reopen, "Reopen the door after the goal and keep stepping");

    std::string oracle_env = "all";
    auto* oracle = app.add_subcommand("oracle", "Shortest visit-all walk per layout");
    oracle->add_option("-e,--env", oracle_env, "Layout name, path, or all");

    auto* envs = app.add_subcommand("environments", "List bundled layouts");

    std::string host = "127.0.0.1";
    int port = 8080;
    auto* serve = app.add_subcommand("serve", "Run the session bridge (HTTP + server-sent events)");
    serve->add_option("--host", host, "Bind address");
    serve->add_option("-p,--port", port, "Port (0 picks a free one)")->check(CLI::Range(0, 65535));

    CLI11_PARSE(app, argc, argv);

    try {
        if (explore->parsed())
            return run(ExperimentKind::Exploration, explore_opts,
                       [&](ExperimentSpec& s) { s.with_baseline = !no_baseline; });
        if (goal->parsed())
            return run(ExperimentKind::Goal, goal_opts, [&](ExperimentSpec& s) {
                s.with_prior = !naive;
                for (const auto& r : release) s.release_rooms.push_back(parse_room(r));
            });
        if (tolman->parsed())
            return run(ExperimentKind::Tolman, tolman_opts, [&](ExperimentSpec& s) { s.runs_per_phase = runs; });
        if (remap->parsed())
            return run(ExperimentKind::Remap, remap_opts, [&](ExperimentSpec& s) { s.reopen_steps = reopen; });
        if (oracle->parsed()) {
            std::vector<std::string> names;
            if (oracle_env == "all") names = bundled_layout_names();
            else names.push_back(oracle_env);
            std::cout << "environment,rooms,oracle,recorded\n";
            for (const auto& name : names) {
                const Layout l = load_environment(name);
                std::cout << l.name << ',' << l.rooms().size() << ',' << oracle_coverage(l) << ','
                          << (l.oracle_coverage ? std::to_string(*l.oracle_coverage) : "") << '\n';
            }
            return 0;
        }
        if (envs->parsed()) {
            for (const auto& name : bundled_layout_names()) {
                const Layout l = load_environment(name);
                std::cout << std::left << std::setw(14) << name << l.rows() << "x" << l.cols() << "  "
                          << l.rooms().size() << " rooms\n";
            }
            return 0;
        }
        if (serve->parsed()) {
            bridge::Server server;
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            const int bound = port == 0 ? server.bind_any(host) : port;
            std::cerr << "aifnav bridge on http://" << host << ':' << bound << "/api/v1 (kernels: "
                      << kernels::active().name << ")\n";
            const bool ok = port == 0 ? server.serve() : server.listen(host, port);
            g_server = nullptr;
            return ok ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
