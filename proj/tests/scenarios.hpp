#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pommer/engine.hpp"

namespace pommer::testing {

// Empty board, four agents parked at their corners, no walls. The base for
// every hand-built transition scenario.
GameState blank_state(MatchConfig config = {});

void require(bool cond, const std::string& msg);

struct Scenario {
  std::string name;
  std::function<void()> run;  // throws std::runtime_error on failure
};

// Hand-built single-step (and a few multi-step) transition oracles covering
// blast geometry, chains, kicks, movement conflicts, deaths and pickups.
const std::vector<Scenario>& engine_scenarios();

}  // namespace pommer::testing
