#pragma once

#include <json.hpp>

#include "cyclebound/model.hpp"

namespace cyclebound {

// Accepts either {"a", "lambda", "m"} or the dimensional set
// {"r", "K", "q", "H", "p", "d"}; the key set picks the form. Throws
// std::invalid_argument when neither set is present or both are.
Params params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Params& p);

}  // namespace cyclebound
