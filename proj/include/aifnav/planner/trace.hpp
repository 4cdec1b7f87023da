#pragma once

#include <cstddef>
#include <ostream>

#include <json.hpp>

#include "aifnav/planner/planner.hpp"

namespace aifnav {

inline constexpr const char* kTraceSchema = "aifnav.trace/1";

nlohmann::json score_to_json(const PolicyScore& s);

// One decision: every candidate with its breakdown and selection probability.
nlohmann::json decision_to_json(const Decision& d, std::size_t step);

// Appends one line per decision.
void write_trace_line(std::ostream& os, const Decision& d, std::size_t step);

}  // namespace aifnav
