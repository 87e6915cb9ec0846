#include "pommer/agents.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <stdexcept>

#include "pommer/external_policy.hpp"

namespace pommer {

namespace {

constexpr std::array<Action, 4> kMoves = {Action::Up, Action::Left, Action::Down, Action::Right};

using Mask = std::array<std::array<bool, kBoardSize>, kBoardSize>;

struct ObsBomb {
  Pos pos;
  int strength;
  int fuse;
};

std::vector<ObsBomb> visible_bombs(const Observation& o) {
  std::vector<ObsBomb> out;
  for (int r = 0; r < kBoardSize; ++r)
    for (int c = 0; c < kBoardSize; ++c)
      if (o.bomb_blast[r][c] > 0) out.push_back({{r, c}, o.bomb_blast[r][c], o.bomb_fuse[r][c]});
  return out;
}

// Ray clipped by rigid walls, absorbed by wood, truncated at fog (coverage
// beyond the window cannot be proven from the observation).
void mark_ray(const Observation& o, Pos origin, int strength, Mask& mask) {
  mask[origin.row][origin.col] = true;
  for (Action dir : kMoves) {
    Pos p = origin;
    for (int d = 1; d < strength; ++d) {
      p = neighbor(p, dir);
      if (!in_bounds(p) || o.cell[p.row][p.col] == kFog) break;
      CellKind k = static_cast<CellKind>(o.cell[p.row][p.col]);
      if (k == CellKind::Rigid) break;
      mask[p.row][p.col] = true;
      if (k == CellKind::Wood) break;
    }
  }
}

// Cells covered by the blast of any visible bomb with fuse <= max_fuse,
// following chains through other visible bombs.
Mask blast_danger(const Observation& o, int max_fuse) {
  Mask mask{};
  auto bombs = visible_bombs(o);
  std::vector<bool> det(bombs.size(), false);
  std::vector<size_t> frontier;
  for (size_t i = 0; i < bombs.size(); ++i)
    if (bombs[i].fuse <= max_fuse) {
      det[i] = true;
      frontier.push_back(i);
    }
  while (!frontier.empty()) {
    size_t i = frontier.back();
    frontier.pop_back();
    Mask ray{};
    mark_ray(o, bombs[i].pos, bombs[i].strength, ray);
    for (int r = 0; r < kBoardSize; ++r)
      for (int c = 0; c < kBoardSize; ++c) {
        if (!ray[r][c]) continue;
        mask[r][c] = true;
        for (size_t j = 0; j < bombs.size(); ++j)
          if (!det[j] && bombs[j].pos == Pos{r, c}) {
            det[j] = true;
            frontier.push_back(j);
          }
      }
  }
  return mask;
}

// Flames that will still burn after the next resolution.
bool standing_flame(const Observation& o, Pos p) { return o.flame[p.row][p.col] >= 2; }

bool walkable(const Observation& o, Pos p, int self_id) {
  if (!in_bounds(p) || o.cell[p.row][p.col] == kFog) return false;
  if (!is_passable(static_cast<CellKind>(o.cell[p.row][p.col]))) return false;
  if (o.bomb_blast[p.row][p.col] > 0) return false;
  if (standing_flame(o, p)) return false;
  int occ = o.occupancy[p.row][p.col];
  if (occ >= 0 && occ != self_id && o.is_alive(occ)) return false;
  return true;
}

struct Bfs {
  std::array<std::array<int, kBoardSize>, kBoardSize> dist;
  std::array<std::array<Action, kBoardSize>, kBoardSize> first;
};

Bfs bfs_from(const Observation& o, Pos start) {
  Bfs b;
  for (auto& row : b.dist) row.fill(-1);
  for (auto& row : b.first) row.fill(Action::Stop);
  b.dist[start.row][start.col] = 0;
  std::deque<Pos> q{start};
  while (!q.empty()) {
    Pos p = q.front();
    q.pop_front();
    for (Action dir : kMoves) {
      Pos n = neighbor(p, dir);
      if (!in_bounds(n) || b.dist[n.row][n.col] >= 0) continue;
      if (!walkable(o, n, o.agent_id)) continue;
      b.dist[n.row][n.col] = b.dist[p.row][p.col] + 1;
      b.first[n.row][n.col] = (p == start) ? dir : b.first[p.row][p.col];
      q.push_back(n);
    }
  }
  return b;
}

bool enemy_in_blast_line(const Observation& o) {
  for (Action dir : kMoves) {
    Pos p = o.position;
    for (int d = 1; d < o.blast_strength; ++d) {
      p = neighbor(p, dir);
      if (!in_bounds(p) || o.cell[p.row][p.col] == kFog) break;
      CellKind k = static_cast<CellKind>(o.cell[p.row][p.col]);
      if (k == CellKind::Rigid || k == CellKind::Wood) break;
      int occ = o.occupancy[p.row][p.col];
      if (occ >= 0 && occ != o.agent_id && occ % 2 != o.agent_id % 2 && o.is_alive(occ))
        return true;
    }
  }
  return false;
}

void push_unique(std::vector<Action>& v, Action a) {
  if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
}

}  // namespace

const char* opponent_acronym(OpponentKind k) {
  switch (k) {
    case OpponentKind::ST: return "ST";
    case OpponentKind::SS: return "SS";
    case OpponentKind::SS_NB: return "SS-NB";
    case OpponentKind::EXT: return "EXT";
  }
  return "?";
}

const char* opponent_key(OpponentKind k) {
  return k == OpponentKind::SS_NB ? "SS_NB" : opponent_acronym(k);
}

OpponentKind opponent_from_string(const std::string& s) {
  if (s == "ST") return OpponentKind::ST;
  if (s == "SS") return OpponentKind::SS;
  if (s == "SS-NB" || s == "SS_NB") return OpponentKind::SS_NB;
  if (s == "EXT") return OpponentKind::EXT;
  throw std::invalid_argument("unknown opponent kind '" + s + "' (expected ST, SS, SS-NB, EXT)");
}

Action act_static(const Observation&) { return Action::Stop; }

std::vector<Action> filter_actions(const Observation& obs) {
  Mask danger = blast_danger(obs, 1);
  for (int r = 0; r < kBoardSize; ++r)
    for (int c = 0; c < kBoardSize; ++c)
      if (obs.flame[r][c] >= 2) danger[r][c] = true;

  auto destination = [&](Action a) -> Pos {
    if (!is_move(a)) return obs.position;
    Pos t = neighbor(obs.position, a);
    if (!in_bounds(t) || obs.cell[t.row][t.col] == kFog ||
        !is_passable(static_cast<CellKind>(obs.cell[t.row][t.col])))
      return obs.position;
    if (obs.bomb_blast[t.row][t.col] > 0) {
      if (!obs.can_kick) return obs.position;
      Pos bt = neighbor(t, a);
      bool free = in_bounds(bt) && obs.cell[bt.row][bt.col] != kFog &&
                  is_passable(static_cast<CellKind>(obs.cell[bt.row][bt.col])) &&
                  obs.bomb_blast[bt.row][bt.col] == 0 && obs.occupancy[bt.row][bt.col] < 0;
      if (!free) return obs.position;
    }
    return t;
  };

  std::vector<Action> allowed;
  for (int i = 0; i < kNumActions; ++i) {
    Action a = static_cast<Action>(i);
    Pos d = destination(a);
    if (!danger[d.row][d.col]) allowed.push_back(a);
  }
  if (allowed.empty())
    for (int i = 0; i < kNumActions; ++i) allowed.push_back(static_cast<Action>(i));
  return allowed;
}

std::vector<Action> simple_ranked(const Observation& obs, Rng& rng, bool aggressive) {
  std::vector<Action> ranked;
  Mask danger = blast_danger(obs, obs.view_radius * 2 + 20);  // any visible bomb
  for (int r = 0; r < kBoardSize; ++r)
    for (int c = 0; c < kBoardSize; ++c)
      if (obs.flame[r][c] >= 2) danger[r][c] = true;

  Bfs paths = bfs_from(obs, obs.position);
  auto nearest = [&](auto&& pred) -> std::optional<Pos> {
    std::optional<Pos> best;
    int best_d = 1 << 20;
    for (int r = 0; r < kBoardSize; ++r)
      for (int c = 0; c < kBoardSize; ++c) {
        int d = paths.dist[r][c];
        if (d < 0 || d >= best_d) continue;
        if (pred(Pos{r, c})) {
          best = Pos{r, c};
          best_d = d;
        }
      }
    return best;
  };

  // 1. evade when standing inside any visible blast line or next to flames
  if (danger[obs.position.row][obs.position.col]) {
    auto safe = nearest([&](Pos p) { return !danger[p.row][p.col]; });
    if (safe && !(*safe == obs.position)) push_unique(ranked, paths.first[safe->row][safe->col]);
  }

  // 2/3. powerup grab and bomb placement; the aggressive variant bombs first
  auto powerup_rule = [&] {
    auto target = nearest([&](Pos p) {
      return paths.dist[p.row][p.col] <= 2 &&
             is_powerup(static_cast<CellKind>(obs.cell[p.row][p.col]));
    });
    if (target && !(*target == obs.position)) push_unique(ranked, paths.first[target->row][target->col]);
  };
  auto bomb_rule = [&] {
    if (obs.ammo <= 0 || obs.bomb_blast[obs.position.row][obs.position.col] > 0) return;
    bool near_wood = false;
    for (Action dir : kMoves) {
      Pos n = neighbor(obs.position, dir);
      if (in_bounds(n) && obs.cell[n.row][n.col] == static_cast<int>(CellKind::Wood))
        near_wood = true;
    }
    bool enemy_close = false;
    if (aggressive) {
      auto e = nearest([&](Pos p) {
        int occ = obs.occupancy[p.row][p.col];
        return occ >= 0 && occ % 2 != obs.agent_id % 2 && obs.is_alive(occ) &&
               paths.dist[p.row][p.col] <= 3;
      });
      enemy_close = e.has_value();
    }
    if (!near_wood && !enemy_in_blast_line(obs) && !enemy_close) return;
    Mask after = danger;
    mark_ray(obs, obs.position, obs.blast_strength, after);
    auto retreat = nearest([&](Pos p) {
      return paths.dist[p.row][p.col] <= 8 && !after[p.row][p.col] && !standing_flame(obs, p);
    });
    if (retreat) push_unique(ranked, Action::Bomb);
  };
  if (aggressive) {
    bomb_rule();
    powerup_rule();
  } else {
    powerup_rule();
    bomb_rule();
  }

  // 4. approach the nearest enemy, else wood, else unexplored frontier
  auto enemy_adjacent = nearest([&](Pos p) {
    for (Action dir : kMoves) {
      Pos n = neighbor(p, dir);
      if (!in_bounds(n)) continue;
      int occ = obs.occupancy[n.row][n.col];
      if (occ >= 0 && occ % 2 != obs.agent_id % 2 && obs.is_alive(occ)) return true;
    }
    return false;
  });
  std::optional<Pos> target = enemy_adjacent;
  if (!target) {
    target = nearest([&](Pos p) {
      for (Action dir : kMoves) {
        Pos n = neighbor(p, dir);
        if (in_bounds(n) && obs.cell[n.row][n.col] == static_cast<int>(CellKind::Wood)) return true;
      }
      return false;
    });
  }
  if (!target) {
    target = nearest([&](Pos p) {
      for (Action dir : kMoves) {
        Pos n = neighbor(p, dir);
        if (in_bounds(n) && obs.cell[n.row][n.col] == kFog) return true;
      }
      return false;
    });
  }
  if (target && !(*target == obs.position))
    push_unique(ranked, paths.first[target->row][target->col]);

  // 5. random legal move, then Stop
  std::vector<Action> legal;
  for (Action dir : kMoves) {
    Pos n = neighbor(obs.position, dir);
    if (in_bounds(n) && walkable(obs, n, obs.agent_id)) legal.push_back(dir);
  }
  rng.shuffle(legal);
  for (Action a : legal) push_unique(ranked, a);
  push_unique(ranked, Action::Stop);
  return ranked;
}

Action act_simple(const Observation& obs, Rng& rng) { return simple_ranked(obs, rng)[0]; }

namespace {
Action smart_choice(const Observation& obs, Rng& rng, bool no_bomb, bool aggressive) {
  std::vector<Action> allowed = filter_actions(obs);
  if (no_bomb) std::erase(allowed, Action::Bomb);
  std::vector<Action> ranked = simple_ranked(obs, rng, aggressive);
  for (Action a : ranked)
    if (std::find(allowed.begin(), allowed.end(), a) != allowed.end()) return a;
  // nothing the heuristic wanted is allowed; keep containment anyway
  if (!allowed.empty()) return allowed.front();
  return no_bomb && ranked[0] == Action::Bomb ? Action::Stop : ranked[0];
}
}  // namespace

Action act_smart_simple(const Observation& obs, Rng& rng) {
  return smart_choice(obs, rng, false, false);
}

Action act_smart_simple_nobomb(const Observation& obs, Rng& rng) {
  return smart_choice(obs, rng, true, false);
}

Action SimplePolicy::act(const Observation& obs) {
  switch (mode_) {
    case Mode::Plain: return act_simple(obs, rng_);
    case Mode::Smart: return smart_choice(obs, rng_, false, aggressive_);
    case Mode::SmartNoBomb: return smart_choice(obs, rng_, true, aggressive_);
  }
  return Action::Stop;
}

std::unique_ptr<Policy> make_policy(OpponentKind kind, uint64_t seed,
                                    const std::string& ext_command, int move_budget_ms) {
  switch (kind) {
    case OpponentKind::ST: return std::make_unique<StaticPolicy>();
    case OpponentKind::SS: return std::make_unique<SimplePolicy>(seed, SimplePolicy::Mode::Smart);
    case OpponentKind::SS_NB:
      return std::make_unique<SimplePolicy>(seed, SimplePolicy::Mode::SmartNoBomb);
    case OpponentKind::EXT:
      if (ext_command.empty())
        return std::make_unique<SimplePolicy>(seed, SimplePolicy::Mode::Smart, true);
      return std::make_unique<ExternalPolicy>(ext_command, move_budget_ms);
  }
  throw std::invalid_argument("unknown opponent kind");
}

}  // namespace pommer
