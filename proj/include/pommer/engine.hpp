#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pommer/types.hpp"

namespace pommer {

using BoardGrid = std::array<std::array<CellKind, kBoardSize>, kBoardSize>;

struct BoardSetup {
  BoardGrid board{};
  BoardGrid hidden{};  // powerup concealed under Wood; Passage means none
  std::array<Pos, kNumAgents> starts{};
};

// Board layout symmetric across the principal diagonal, all four corner
// starts mutually reachable through non-Rigid cells. Retries internally with
// fresh sub-seeds; guaranteed to terminate.
BoardSetup generate_board(uint64_t seed, const MatchConfig& config);

struct GameState {
  int step = 0;
  BoardGrid board{};
  BoardGrid hidden{};
  std::array<AgentEntity, kNumAgents> agents{};
  std::vector<Bomb> bombs;
  std::vector<Flame> flames;
  uint64_t rng_state = 0;
  MatchConfig config;
  std::optional<GameResult> result;
  // Agents that died during the most recent step, at their death cells.
  // They are gone from the board but still show in observations for one step.
  std::vector<std::pair<int, Pos>> recent_deaths;
};

GameState make_initial_state(uint64_t seed, const MatchConfig& config);

// Resolves one joint action. Resolution order: flame/fuse tick, kicked-bomb
// movement, agent movement with bounce-back, bomb placement, detonation
// (chains included), flame deaths, powerup pickup. Sets state.result when the
// episode ends. Throws if the episode is already over.
StepEvents step(GameState& state, const std::array<Action, kNumAgents>& actions);

Observation observe(const GameState& state, int agent_id);

std::string serialize_state(const GameState& state);
uint64_t state_hash(const GameState& state);

bool flood_fill_connects_starts(const BoardGrid& board, const std::array<Pos, kNumAgents>& starts);

}  // namespace pommer
