#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pommer {

inline constexpr int kBoardSize = 11;
inline constexpr int kNumAgents = 4;
inline constexpr int kNumActions = 6;
inline constexpr const char* kEngineVersion = "1.0";

enum class CellKind : uint8_t {
  Passage = 0,
  Rigid = 1,
  Wood = 2,
  PowerupExtraBomb = 3,
  PowerupIncrRange = 4,
  PowerupKick = 5,
};

inline bool is_powerup(CellKind k) {
  return k == CellKind::PowerupExtraBomb || k == CellKind::PowerupIncrRange ||
         k == CellKind::PowerupKick;
}

inline bool is_passable(CellKind k) { return k == CellKind::Passage || is_powerup(k); }

// Integer coding 0..5 is part of the wire protocol and record format.
enum class Action : int { Stop = 0, Up = 1, Left = 2, Down = 3, Right = 4, Bomb = 5 };

inline bool is_move(Action a) {
  return a == Action::Up || a == Action::Left || a == Action::Down || a == Action::Right;
}

struct Pos {
  int row = 0;
  int col = 0;
  bool operator==(const Pos&) const = default;
};

inline Pos neighbor(Pos p, Action a) {
  switch (a) {
    case Action::Up: return {p.row - 1, p.col};
    case Action::Left: return {p.row, p.col - 1};
    case Action::Down: return {p.row + 1, p.col};
    case Action::Right: return {p.row, p.col + 1};
    default: return p;
  }
}

inline bool in_bounds(Pos p) {
  return p.row >= 0 && p.row < kBoardSize && p.col >= 0 && p.col < kBoardSize;
}

inline int chebyshev(Pos a, Pos b) {
  int dr = a.row > b.row ? a.row - b.row : b.row - a.row;
  int dc = a.col > b.col ? a.col - b.col : b.col - a.col;
  return dr > dc ? dr : dc;
}

inline bool adjacent(Pos a, Pos b) {
  int dr = a.row - b.row, dc = a.col - b.col;
  return (dr * dr + dc * dc) == 1;
}

struct MatchConfig {
  int max_steps = 800;
  int view_radius = 5;
  int initial_ammo_team0 = 1;
  int initial_ammo_team1 = 1;
  int initial_blast_team0 = 2;
  int initial_blast_team1 = 2;
  double powerup_probability = 0.5;
  bool reward_shaping_enabled = true;
  int bomb_fuse = 10;
  int flame_ttl = 2;
  int num_rigid = 36;
  int num_wood = 36;
  double tie_reward = -1.0;

  bool operator==(const MatchConfig&) const = default;
};

struct AgentEntity {
  int id = 0;
  int team = 0;  // ids 0,2 -> team 0; ids 1,3 -> team 1
  Pos position;
  int ammo = 1;
  int blast_strength = 2;
  bool can_kick = false;
  bool alive = true;
};

struct Bomb {
  Pos position;
  int owner_id = 0;
  int fuse = 10;
  int blast_strength = 2;
  std::optional<Action> moving_dir;
  bool was_kicked = false;
};

struct FlameOwner {
  int id = 0;
  bool kicked = false;  // the bomb that produced this flame had been kicked
  bool operator==(const FlameOwner&) const = default;
};

struct Flame {
  Pos position;
  int ttl = 2;
  std::vector<FlameOwner> owners;
};

enum class Outcome { Win, Tie };
enum class Cause { Elimination, Timeout, SimultaneousDeath };

struct GameResult {
  Outcome outcome = Outcome::Tie;
  int winning_team = -1;  // valid when outcome == Win
  Cause cause = Cause::Timeout;
  bool operator==(const GameResult&) const = default;
};

struct DeathEvent {
  int victim = 0;
  Pos position;
  std::vector<FlameOwner> killers;  // deduped per owner id
};

struct StepEvents {
  std::array<std::vector<Pos>, kNumAgents> wood_blasted;  // by that agent's own bomb rays
  std::array<int, kNumAgents> powerups_picked{};
  std::vector<DeathEvent> deaths;
  std::array<bool, kNumAgents> own_bomb_kicked{};
  std::array<std::optional<Pos>, kNumAgents> cells_entered;
};

// Fog marker used in every observation grid that carries cell kinds.
inline constexpr int kFog = -1;

using Grid = std::array<std::array<int, kBoardSize>, kBoardSize>;

struct Observation {
  int agent_id = 0;
  int step = 0;
  int view_radius = 5;
  Grid cell{};        // CellKind as int, or kFog outside the window
  Grid bomb_blast{};  // blast strength at bomb cells, 0 elsewhere
  Grid bomb_fuse{};   // fuse ticks at bomb cells, 0 elsewhere
  Grid flame{};       // flame ttl, 0 elsewhere
  Grid occupancy{};   // agent id, or -1; agents that died this step appear at their death cell
  Pos position;
  int ammo = 0;
  int blast_strength = 0;
  bool can_kick = false;
  bool alive = true;
  std::vector<int> alive_ids;  // global, not visibility-limited
  int teammate_id = 0;
  std::vector<int> enemy_ids;

  bool visible(Pos p) const { return in_bounds(p) && cell[p.row][p.col] != kFog; }
  bool is_alive(int id) const {
    for (int a : alive_ids)
      if (a == id) return true;
    return false;
  }
};

const char* action_name(Action a);
const char* cell_kind_name(CellKind k);
std::string result_to_string(const GameResult& r);

}  // namespace pommer
