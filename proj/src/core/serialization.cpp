#include "aifnav/core/serialization.hpp"

#include <stdexcept>

namespace aifnav {
namespace {

using nlohmann::json;

// Row-major nested arrays over the full stored extent.
json counts_to_json(const DirichletCounts& c) {
    json rows = json::array();
    for (std::size_t r = 0; r < c.rows(); ++r) {
        json row = json::array();
        for (std::size_t col = 0; col < c.cols(); ++col) row.push_back(c.at(r, col));
        rows.push_back(std::move(row));
    }
    return {{"floor", c.floor()}, {"rows", c.rows()}, {"cols", c.cols()}, {"counts", std::move(rows)}};
}

DirichletCounts counts_from_json(const json& j) {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const double floor = j.at("floor").get<double>();
    DirichletCounts c(rows, cols, floor, floor);
    const auto& data = j.at("counts");
    if (data.size() != rows) throw std::invalid_argument("model document: count rows mismatch");
    for (std::size_t r = 0; r < rows; ++r) {
        if (data[r].size() != cols) throw std::invalid_argument("model document: count cols mismatch");
        for (std::size_t col = 0; col < cols; ++col) {
            const double v = data[r][col].get<double>();
            if (v < floor) throw std::invalid_argument("model document: count below floor");
            c.set(r, col, v);
        }
    }
    return c;
}

std::string_view kind_name(EdgeKind k) { return k == EdgeKind::Open ? "open" : "blocked"; }

}  // namespace

json model_to_json(const GenerativeModel& m) {
    const auto& cfg = m.config();
    json doc;
    doc["schema"] = kModelSchema;
    doc["config"] = {{"count_floor", cfg.count_floor},
                     {"pose_floor", cfg.pose_floor},
                     {"initial_count", cfg.initial_count},
                     {"stay_prior", cfg.stay_prior},
                     {"anchor_threshold", cfg.anchor_threshold}};
    doc["dimensions"] = {{"states", m.num_states()},
                         {"observations", m.num_observations()},
                         {"poses", m.num_poses()},
                         {"state_capacity", m.state_capacity()},
                         {"observation_capacity", m.observation_capacity()}};
    doc["observation_model"] = counts_to_json(m.observation_counts());
    doc["position_model"] = counts_to_json(m.pose_counts());
    json trans = json::object();
    for (Action a : kAllActions) trans[std::string(to_string(a))] = counts_to_json(m.transition_counts(a));
    doc["transition_model"] = std::move(trans);

    const auto& g = m.pose_graph();
    json poses = json::array();
    for (const auto& p : g.poses()) poses.push_back({p.row, p.col});
    json edges = json::array();
    for (std::size_t i = 0; i < g.size(); ++i)
        for (Action a : kMoves) {
            const auto k = g.kind(i, a);
            if (k != EdgeKind::Unknown) edges.push_back({i, std::string(to_string(a)), std::string(kind_name(k))});
        }
    doc["poses"] = std::move(poses);
    doc["edges"] = std::move(edges);
    return doc;
}

GenerativeModel model_from_json(const json& doc) {
    if (doc.at("schema").get<std::string>() != kModelSchema)
        throw std::invalid_argument("model document: unsupported schema");
    ModelConfig cfg;
    const auto& c = doc.at("config");
    cfg.count_floor = c.at("count_floor").get<double>();
    cfg.pose_floor = c.at("pose_floor").get<double>();
    cfg.initial_count = c.at("initial_count").get<double>();
    cfg.stay_prior = c.at("stay_prior").get<double>();
    cfg.anchor_threshold = c.at("anchor_threshold").get<double>();

    PoseGraph graph;
    for (const auto& p : doc.at("poses")) graph.add_pose({p.at(0).get<int>(), p.at(1).get<int>()});
    for (const auto& e : doc.at("edges")) {
        const auto from = e.at(0).get<std::size_t>();
        const auto a = parse_action(e.at(1).get<std::string>());
        const auto kind = e.at(2).get<std::string>();
        if (!a || *a == Action::Stay || from >= graph.size()) throw std::invalid_argument("model document: bad edge");
        if (kind == "open")
            graph.set_open(from, *a);
        else if (kind == "blocked")
            graph.set_blocked(from, *a);
        else
            throw std::invalid_argument("model document: bad edge kind");
    }

    std::array<DirichletCounts, kNumActions> trans;
    for (Action a : kAllActions)
        trans[index_of(a)] = counts_from_json(doc.at("transition_model").at(std::string(to_string(a))));
    const auto& dims = doc.at("dimensions");
    return GenerativeModel::from_parts(cfg, dims.at("states").get<std::size_t>(),
                                       dims.at("observations").get<std::size_t>(),
                                       counts_from_json(doc.at("observation_model")),
                                       counts_from_json(doc.at("position_model")), std::move(trans),
                                       std::move(graph));
}

std::string save_model(const GenerativeModel& model) { return model_to_json(model).dump(); }

GenerativeModel load_model(const std::string& text) { return model_from_json(nlohmann::json::parse(text)); }

}  // namespace aifnav
