#include "aifnav/gridworld/layout.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace aifnav {

namespace detail {
struct BundledLayout {
    const char* name;
    const char* text;
};
extern const BundledLayout kBundledLayouts[];
extern const std::size_t kBundledLayoutCount;
}  // namespace detail

namespace {

using nlohmann::json;

RoomCoord coord_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("layout: room coordinate must be [row, col]");
    return {j[0].get<int>(), j[1].get<int>()};
}

Door door_from(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("layout: door must be a pair of rooms");
    return make_door(coord_from(j[0]), coord_from(j[1]));
}

std::string coord_text(RoomCoord r) { return "[" + std::to_string(r.row) + ", " + std::to_string(r.col) + "]"; }

std::string door_text(const Door& d) { return "[" + coord_text(d.a) + ", " + coord_text(d.b) + "]"; }

bool adjacent(RoomCoord x, RoomCoord y) { return std::abs(x.row - y.row) + std::abs(x.col - y.col) == 1; }

}  // namespace

RoomCoord moved(RoomCoord r, Action a) {
    const Pose p = displaced(Pose{r.row, r.col}, a);
    return {p.row, p.col};
}

Door make_door(RoomCoord x, RoomCoord y) { return x < y ? Door{x, y} : Door{y, x}; }

bool Layout::is_room(RoomCoord r) const {
    if (r.row < 0 || r.col < 0 || r.row >= rows() || r.col >= cols()) return false;
    return colours[static_cast<std::size_t>(r.row)][static_cast<std::size_t>(r.col)] >= 0;
}

int Layout::colour(RoomCoord r) const {
    if (!is_room(r)) throw std::out_of_range("layout: not a room");
    return colours[static_cast<std::size_t>(r.row)][static_cast<std::size_t>(r.col)];
}

bool Layout::has_door(RoomCoord x, RoomCoord y) const {
    return std::binary_search(doors.begin(), doors.end(), make_door(x, y));
}

std::vector<RoomCoord> Layout::rooms() const {
    std::vector<RoomCoord> out;
    for (int r = 0; r < rows(); ++r)
        for (int c = 0; c < cols(); ++c)
            if (is_room({r, c})) out.push_back({r, c});
    return out;
}

std::optional<std::size_t> Layout::room_index(RoomCoord r) const {
    if (!is_room(r)) return std::nullopt;
    std::size_t idx = 0;
    for (int rr = 0; rr < rows(); ++rr)
        for (int cc = 0; cc < cols(); ++cc) {
            if (rr == r.row && cc == r.col) return idx;
            if (is_room({rr, cc})) ++idx;
        }
    return std::nullopt;
}

void validate_layout(const Layout& l) {
    if (l.name.empty()) throw std::invalid_argument("layout: missing name");
    if (l.colours.empty() || l.colours.front().empty()) throw std::invalid_argument("layout: empty colour matrix");
    for (const auto& row : l.colours)
        if (row.size() != l.colours.front().size()) throw std::invalid_argument("layout: colour matrix is not rectangular");
    if (l.rooms().empty()) throw std::invalid_argument("layout: no room");
    if (!l.is_room(l.start)) throw std::invalid_argument("layout: start is not a room");
    for (std::size_t i = 0; i < l.doors.size(); ++i) {
        const Door& d = l.doors[i];
        if (!l.is_room(d.a) || !l.is_room(d.b)) throw std::invalid_argument("layout: door references a negative cell");
        if (!adjacent(d.a, d.b)) throw std::invalid_argument("layout: door joins non-adjacent rooms");
        if (i > 0 && !(l.doors[i - 1] < d)) throw std::invalid_argument("layout: doors must be sorted and unique");
    }
    for (const auto& [label, d] : l.block_points)
        if (!l.has_door(d.a, d.b)) throw std::invalid_argument("layout: block point " + label + " is not a door");
}

Layout parse_layout(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("layout: malformed document: ") + e.what());
    }
    Layout l;
    try {
        l.name = j.at("name").get<std::string>();
        if (j.contains("notes")) l.notes = j["notes"].get<std::string>();
        l.colours = j.at("colours").get<std::vector<std::vector<int>>>();
        for (const auto& d : j.at("doors")) l.doors.push_back(door_from(d));
        l.start = coord_from(j.at("start"));
        if (j.contains("block_points"))
            for (const auto& [label, d] : j["block_points"].items()) l.block_points.emplace(label, door_from(d));
        if (j.contains("goal_colour")) l.goal_colour = j["goal_colour"].get<int>();
        if (j.contains("oracle_coverage")) l.oracle_coverage = j["oracle_coverage"].get<int>();
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("layout: schema violation: ") + e.what());
    }
    std::sort(l.doors.begin(), l.doors.end());
    validate_layout(l);
    return l;
}

std::string layout_to_text(const Layout& l) {
    std::ostringstream os;
    os << "{\n";
    os << "  \"name\": " << json(l.name).dump() << ",\n";
    if (!l.notes.empty()) os << "  \"notes\": " << json(l.notes).dump() << ",\n";
    if (l.oracle_coverage) os << "  \"oracle_coverage\": " << *l.oracle_coverage << ",\n";
    os << "  \"start\": " << coord_text(l.start) << ",\n";
    if (l.goal_colour) os << "  \"goal_colour\": " << *l.goal_colour << ",\n";
    os << "  \"colours\": [\n";
    for (std::size_t r = 0; r < l.colours.size(); ++r) {
        os << "    [";
        for (std::size_t c = 0; c < l.colours[r].size(); ++c) os << (c ? ", " : "") << l.colours[r][c];
        os << "]" << (r + 1 < l.colours.size() ? "," : "") << "\n";
    }
    os << "  ],\n";
    os << "  \"doors\": [\n";
    for (std::size_t i = 0; i < l.doors.size(); ++i)
        os << "    " << door_text(l.doors[i]) << (i + 1 < l.doors.size() ? "," : "") << "\n";
    os << "  ]";
    if (!l.block_points.empty()) {
        os << ",\n  \"block_points\": {\n";
        std::size_t k = 0;
        for (const auto& [label, d] : l.block_points)
            os << "    " << json(label).dump() << ": " << door_text(d) << (++k < l.block_points.size() ? "," : "")
               << "\n";
        os << "  }";
    }
    os << "\n}\n";
    return os.str();
}

std::vector<std::string> bundled_layout_names() {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < detail::kBundledLayoutCount; ++i) out.emplace_back(detail::kBundledLayouts[i].name);
    return out;
}

const char* bundled_layout_text(const std::string& name) {
    for (std::size_t i = 0; i < detail::kBundledLayoutCount; ++i)
        if (name == detail::kBundledLayouts[i].name) return detail::kBundledLayouts[i].text;
    return nullptr;
}

Layout load_environment(const std::string& name_or_path) {
    if (const char* text = bundled_layout_text(name_or_path)) return parse_layout(text);
    std::ifstream in(name_or_path);
    if (!in) throw std::invalid_argument("unknown environment: " + name_or_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_layout(ss.str());
}

bool operator==(const Layout& x, const Layout& y) {
    return x.name == y.name && x.notes == y.notes && x.colours == y.colours && x.doors == y.doors &&
           x.start == y.start && x.block_points == y.block_points && x.goal_colour == y.goal_colour &&
           x.oracle_coverage == y.oracle_coverage;
}

}  // namespace aifnav
