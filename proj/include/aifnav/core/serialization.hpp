#pragma once

#include <string>

#include <json.hpp>

#include "aifnav/core/generative_model.hpp"

namespace aifnav {

inline constexpr const char* kModelSchema = "aifnav.model/1";

nlohmann::json model_to_json(const GenerativeModel& model);
GenerativeModel model_from_json(const nlohmann::json& doc);

std::string save_model(const GenerativeModel& model);
GenerativeModel load_model(const std::string& text);

}  // namespace aifnav
