#pragma once

#include <json.hpp>

#include "pommer/types.hpp"

namespace pommer {

using ordered_json = nlohmann::ordered_json;

ordered_json config_to_json(const MatchConfig& c);
MatchConfig config_from_json(const ordered_json& j);

ordered_json result_to_json(const GameResult& r);
GameResult result_from_json(const ordered_json& j);

// Wire/export form of an observation; grids are row-major 11x11 arrays.
ordered_json observation_to_json(const Observation& o);

}  // namespace pommer
