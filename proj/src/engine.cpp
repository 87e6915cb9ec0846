#include "pommer/engine.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

#include "pommer/rng.hpp"

namespace pommer {

namespace {

const std::array<Pos, kNumAgents> kCornerStarts = {
    Pos{0, 0}, Pos{0, kBoardSize - 1}, Pos{kBoardSize - 1, kBoardSize - 1},
    Pos{kBoardSize - 1, 0}};

// Corner cells plus a 2-cell corridor along each edge stay clear so agents
// are never boxed in at spawn. The set is symmetric under transposition.
bool is_reserved(Pos p) {
  int lo = 0, hi = kBoardSize - 1;
  auto near_corner = [&](int cr, int cc) {
    if (p.row == cr && p.col == cc) return true;
    if (p.row == cr && std::abs(p.col - cc) <= 2) return true;
    if (p.col == cc && std::abs(p.row - cr) <= 2) return true;
    return false;
  };
  return near_corner(lo, lo) || near_corner(lo, hi) || near_corner(hi, lo) || near_corner(hi, hi);
}

bool try_generate(Rng& rng, const MatchConfig& config, BoardGrid& board, BoardGrid& hidden,
                  int num_rigid) {
  for (auto& row : board) row.fill(CellKind::Passage);
  for (auto& row : hidden) row.fill(CellKind::Passage);

  // Candidates on the upper triangle (diagonal included); mirrored below.
  std::vector<Pos> candidates;
  for (int r = 0; r < kBoardSize; ++r)
    for (int c = r; c < kBoardSize; ++c)
      if (!is_reserved({r, c})) candidates.push_back({r, c});
  rng.shuffle(candidates);

  int rigid_left = num_rigid;
  int wood_left = config.num_wood;
  for (Pos p : candidates) {
    int weight = (p.row == p.col) ? 1 : 2;
    CellKind k;
    if (rigid_left > 0) {
      k = CellKind::Rigid;
      rigid_left -= weight;
    } else if (wood_left > 0) {
      k = CellKind::Wood;
      wood_left -= weight;
    } else {
      break;
    }
    board[p.row][p.col] = k;
    board[p.col][p.row] = k;
  }

  // Powerup concealment is drawn in row-major order for determinism; it does
  // not need to be symmetric, only the visible wall kinds do.
  static const CellKind kinds[3] = {CellKind::PowerupExtraBomb, CellKind::PowerupIncrRange,
                                    CellKind::PowerupKick};
  for (int r = 0; r < kBoardSize; ++r)
    for (int c = 0; c < kBoardSize; ++c)
      if (board[r][c] == CellKind::Wood && rng.uniform() < config.powerup_probability)
        hidden[r][c] = kinds[rng.below(3)];

  return flood_fill_connects_starts(board, kCornerStarts);
}

std::vector<Pos> blast_ray(const BoardGrid& board, Pos origin, int strength) {
  std::vector<Pos> cells;
  cells.push_back(origin);
  for (Action dir : {Action::Up, Action::Left, Action::Down, Action::Right}) {
    Pos p = origin;
    for (int d = 1; d < strength; ++d) {
      p = neighbor(p, dir);
      if (!in_bounds(p) || board[p.row][p.col] == CellKind::Rigid) break;
      cells.push_back(p);
      if (board[p.row][p.col] == CellKind::Wood) break;  // wood absorbs the ray
    }
  }
  return cells;
}

void add_owner(std::vector<FlameOwner>& owners, FlameOwner o) {
  for (auto& e : owners) {
    if (e.id == o.id) {
      if (!o.kicked) e.kicked = false;  // a non-kicked source takes precedence
      return;
    }
  }
  owners.push_back(o);
}

}  // namespace

bool flood_fill_connects_starts(const BoardGrid& board,
                                const std::array<Pos, kNumAgents>& starts) {
  std::array<std::array<bool, kBoardSize>, kBoardSize> seen{};
  std::deque<Pos> queue{starts[0]};
  seen[starts[0].row][starts[0].col] = true;
  while (!queue.empty()) {
    Pos p = queue.front();
    queue.pop_front();
    for (Action dir : {Action::Up, Action::Left, Action::Down, Action::Right}) {
      Pos n = neighbor(p, dir);
      if (!in_bounds(n) || seen[n.row][n.col] || board[n.row][n.col] == CellKind::Rigid) continue;
      seen[n.row][n.col] = true;
      queue.push_back(n);
    }
  }
  for (Pos s : starts)
    if (!seen[s.row][s.col]) return false;
  return true;
}

BoardSetup generate_board(uint64_t seed, const MatchConfig& config) {
  BoardSetup setup;
  setup.starts = kCornerStarts;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Rng rng(mix_seed(seed, static_cast<uint64_t>(attempt)));
    if (try_generate(rng, config, setup.board, setup.hidden, config.num_rigid)) return setup;
  }
  // Rigid walls are the only thing that can break accessibility; a wood-only
  // board always validates.
  Rng rng(mix_seed(seed, 0xFA11BACCULL));
  try_generate(rng, config, setup.board, setup.hidden, 0);
  return setup;
}

GameState make_initial_state(uint64_t seed, const MatchConfig& config) {
  GameState st;
  st.config = config;
  BoardSetup setup = generate_board(mix_seed(seed, 0), config);
  st.board = setup.board;
  st.hidden = setup.hidden;
  st.rng_state = mix_seed(seed, 1);
  for (int i = 0; i < kNumAgents; ++i) {
    AgentEntity& a = st.agents[i];
    a.id = i;
    a.team = i % 2;
    a.position = setup.starts[i];
    a.ammo = (a.team == 0) ? config.initial_ammo_team0 : config.initial_ammo_team1;
    a.blast_strength = (a.team == 0) ? config.initial_blast_team0 : config.initial_blast_team1;
    a.can_kick = false;
    a.alive = true;
  }
  return st;
}

StepEvents step(GameState& st, const std::array<Action, kNumAgents>& actions_in) {
  if (st.result) throw std::logic_error("step() called on a finished episode");

  StepEvents ev;
  st.recent_deaths.clear();

  auto bomb_index_at = [&](Pos p) -> int {
    for (size_t i = 0; i < st.bombs.size(); ++i)
      if (st.bombs[i].position == p) return static_cast<int>(i);
    return -1;
  };
  auto alive_agent_at = [&](Pos p) -> int {
    for (const auto& a : st.agents)
      if (a.alive && a.position == p) return a.id;
    return -1;
  };
  auto flame_at = [&](Pos p) -> Flame* {
    for (auto& f : st.flames)
      if (f.position == p) return &f;
    return nullptr;
  };

  // 1. flame ttl / bomb fuse tick
  std::erase_if(st.flames, [](const Flame& f) { return f.ttl <= 1; });
  for (auto& f : st.flames) f.ttl--;
  for (auto& b : st.bombs) b.fuse--;

  // 2. previously kicked bombs keep rolling until blocked
  for (auto& b : st.bombs) {
    if (!b.moving_dir) continue;
    Pos nxt = neighbor(b.position, *b.moving_dir);
    bool blocked = !in_bounds(nxt) || !is_passable(st.board[nxt.row][nxt.col]) ||
                   alive_agent_at(nxt) >= 0 || bomb_index_at(nxt) >= 0;
    if (blocked)
      b.moving_dir.reset();
    else
      b.position = nxt;
  }

  // 3. agent movement with deterministic bounce-back on conflicts
  std::array<Action, kNumAgents> actions = actions_in;
  for (int i = 0; i < kNumAgents; ++i)
    if (!st.agents[i].alive) actions[i] = Action::Stop;

  struct Plan {
    Pos from, to;
    bool moves = false;
    int kick_bomb = -1;
    Pos bomb_to;
    Action dir = Action::Stop;
  };
  std::array<Plan, kNumAgents> plan;
  for (int i = 0; i < kNumAgents; ++i) {
    const AgentEntity& a = st.agents[i];
    Plan& p = plan[i];
    p.from = p.to = a.position;
    if (!a.alive || !is_move(actions[i])) continue;
    Pos t = neighbor(a.position, actions[i]);
    if (!in_bounds(t) || !is_passable(st.board[t.row][t.col])) continue;
    int bi = bomb_index_at(t);
    if (bi >= 0) {
      if (!a.can_kick) continue;
      Pos bt = neighbor(t, actions[i]);
      if (!in_bounds(bt) || !is_passable(st.board[bt.row][bt.col]) ||
          alive_agent_at(bt) >= 0 || bomb_index_at(bt) >= 0)
        continue;
      p.kick_bomb = bi;
      p.bomb_to = bt;
    }
    p.to = t;
    p.moves = true;
    p.dir = actions[i];
  }

  // Revert all conflicting movers until stable. All ties resolve to bounce.
  bool changed = true;
  auto revert = [&](int i) {
    plan[i].to = plan[i].from;
    plan[i].moves = false;
    plan[i].kick_bomb = -1;
    changed = true;
  };
  while (changed) {
    changed = false;
    for (int i = 0; i < kNumAgents; ++i) {
      if (!plan[i].moves) continue;
      for (int j = 0; j < kNumAgents; ++j) {
        if (i == j || !st.agents[j].alive) continue;
        if (plan[j].moves && i < j && plan[i].to == plan[j].to) {
          revert(i);
          revert(j);
          break;
        }
        if (plan[j].moves && plan[i].to == plan[j].from && plan[j].to == plan[i].from) {
          revert(i);
          revert(j);
          break;
        }
        if (!plan[j].moves && plan[i].to == plan[j].from) {
          revert(i);
          break;
        }
        // kicked bomb destination colliding with another mover or stayer
        if (plan[i].kick_bomb >= 0 &&
            ((plan[j].moves && plan[i].bomb_to == plan[j].to) ||
             (!plan[j].moves && plan[i].bomb_to == plan[j].from))) {
          revert(i);
          break;
        }
        if (plan[i].kick_bomb >= 0 && plan[j].kick_bomb >= 0 && i < j &&
            plan[i].bomb_to == plan[j].bomb_to) {
          revert(i);
          revert(j);
          break;
        }
      }
    }
  }

  for (int i = 0; i < kNumAgents; ++i) {
    if (!plan[i].moves) continue;
    st.agents[i].position = plan[i].to;
    ev.cells_entered[i] = plan[i].to;
    if (plan[i].kick_bomb >= 0) {
      Bomb& b = st.bombs[plan[i].kick_bomb];
      b.position = plan[i].bomb_to;
      b.moving_dir = plan[i].dir;
      b.was_kicked = true;
      ev.own_bomb_kicked[b.owner_id] = true;
    }
  }

  // 4. bomb placement
  for (int i = 0; i < kNumAgents; ++i) {
    AgentEntity& a = st.agents[i];
    if (!a.alive || actions[i] != Action::Bomb) continue;
    if (a.ammo <= 0 || bomb_index_at(a.position) >= 0) continue;
    st.bombs.push_back(Bomb{a.position, i, st.config.bomb_fuse, a.blast_strength, {}, false});
    a.ammo--;
  }

  // 5. detonation with chain propagation; all rays use the pre-blast board
  std::vector<bool> det(st.bombs.size(), false);
  std::vector<size_t> frontier;
  for (size_t i = 0; i < st.bombs.size(); ++i) {
    if (st.bombs[i].fuse <= 0 || flame_at(st.bombs[i].position)) {
      det[i] = true;
      frontier.push_back(i);
    }
  }
  std::vector<std::pair<size_t, std::vector<Pos>>> rays;
  while (!frontier.empty()) {
    size_t bi = frontier.back();
    frontier.pop_back();
    const Bomb& b = st.bombs[bi];
    rays.emplace_back(bi, blast_ray(st.board, b.position, b.blast_strength));
    for (Pos c : rays.back().second) {
      for (size_t j = 0; j < st.bombs.size(); ++j) {
        if (!det[j] && st.bombs[j].position == c) {
          det[j] = true;
          frontier.push_back(j);
        }
      }
    }
  }
  std::sort(rays.begin(), rays.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  std::vector<Pos> destroyed_wood;
  for (const auto& [bi, cells] : rays) {
    const Bomb& b = st.bombs[bi];
    for (Pos c : cells) {
      if (st.board[c.row][c.col] == CellKind::Wood) {
        auto& credited = ev.wood_blasted[b.owner_id];
        if (std::find(credited.begin(), credited.end(), c) == credited.end())
          credited.push_back(c);
        if (std::find(destroyed_wood.begin(), destroyed_wood.end(), c) == destroyed_wood.end())
          destroyed_wood.push_back(c);
      }
      Flame* f = flame_at(c);
      if (!f) {
        st.flames.push_back(Flame{c, st.config.flame_ttl, {}});
        f = &st.flames.back();
      } else {
        f->ttl = std::max(f->ttl, st.config.flame_ttl);
      }
      add_owner(f->owners, FlameOwner{b.owner_id, b.was_kicked});
    }
    st.agents[b.owner_id].ammo++;
  }
  for (Pos c : destroyed_wood) {
    st.board[c.row][c.col] = st.hidden[c.row][c.col];
    st.hidden[c.row][c.col] = CellKind::Passage;
  }
  {
    size_t w = 0;
    for (size_t i = 0; i < st.bombs.size(); ++i)
      if (!det[i]) st.bombs[w++] = st.bombs[i];
    st.bombs.resize(w);
  }

  // 6. flame deaths
  for (auto& a : st.agents) {
    if (!a.alive) continue;
    Flame* f = flame_at(a.position);
    if (!f) continue;
    a.alive = false;
    ev.deaths.push_back(DeathEvent{a.id, a.position, f->owners});
    st.recent_deaths.emplace_back(a.id, a.position);
  }

  // 7. powerup pickup
  for (auto& a : st.agents) {
    if (!a.alive) continue;
    CellKind k = st.board[a.position.row][a.position.col];
    if (!is_powerup(k)) continue;
    if (k == CellKind::PowerupExtraBomb) a.ammo++;
    if (k == CellKind::PowerupIncrRange) a.blast_strength++;
    if (k == CellKind::PowerupKick) a.can_kick = true;
    st.board[a.position.row][a.position.col] = CellKind::Passage;
    ev.powerups_picked[a.id]++;
  }

  // 8. advance and resolve
  st.step++;
  bool t0 = st.agents[0].alive || st.agents[2].alive;
  bool t1 = st.agents[1].alive || st.agents[3].alive;
  if (!t0 && !t1)
    st.result = GameResult{Outcome::Tie, -1, Cause::SimultaneousDeath};
  else if (!t1)
    st.result = GameResult{Outcome::Win, 0, Cause::Elimination};
  else if (!t0)
    st.result = GameResult{Outcome::Win, 1, Cause::Elimination};
  else if (st.step >= st.config.max_steps)
    st.result = GameResult{Outcome::Tie, -1, Cause::Timeout};
  return ev;
}

Observation observe(const GameState& st, int agent_id) {
  if (agent_id < 0 || agent_id >= kNumAgents) throw std::invalid_argument("bad agent id");
  const AgentEntity& self = st.agents[agent_id];
  Observation o;
  o.agent_id = agent_id;
  o.step = st.step;
  o.view_radius = st.config.view_radius;
  for (int r = 0; r < kBoardSize; ++r)
    for (int c = 0; c < kBoardSize; ++c) {
      o.cell[r][c] = kFog;
      o.occupancy[r][c] = -1;
    }
  Pos center = self.position;
  auto vis = [&](Pos p) { return chebyshev(p, center) <= o.view_radius; };
  for (int r = 0; r < kBoardSize; ++r)
    for (int c = 0; c < kBoardSize; ++c)
      if (vis({r, c})) o.cell[r][c] = static_cast<int>(st.board[r][c]);
  for (const auto& b : st.bombs)
    if (vis(b.position)) {
      o.bomb_blast[b.position.row][b.position.col] = b.blast_strength;
      o.bomb_fuse[b.position.row][b.position.col] = b.fuse;
    }
  for (const auto& f : st.flames)
    if (vis(f.position)) o.flame[f.position.row][f.position.col] = f.ttl;
  for (const auto& a : st.agents)
    if (a.alive && vis(a.position)) o.occupancy[a.position.row][a.position.col] = a.id;
  for (const auto& [id, pos] : st.recent_deaths)
    if (vis(pos)) o.occupancy[pos.row][pos.col] = id;
  o.position = self.position;
  o.ammo = self.ammo;
  o.blast_strength = self.blast_strength;
  o.can_kick = self.can_kick;
  o.alive = self.alive;
  for (const auto& a : st.agents)
    if (a.alive) o.alive_ids.push_back(a.id);
  o.teammate_id = (agent_id + 2) % kNumAgents;
  for (int i = 0; i < kNumAgents; ++i)
    if (i % 2 != agent_id % 2) o.enemy_ids.push_back(i);
  return o;
}

std::string serialize_state(const GameState& st) {
  std::ostringstream out;
  out << "v" << kEngineVersion << " step=" << st.step << " rng=" << st.rng_state << "\n";
  for (int r = 0; r < kBoardSize; ++r) {
    for (int c = 0; c < kBoardSize; ++c)
      out << static_cast<int>(st.board[r][c]) << ":" << static_cast<int>(st.hidden[r][c]) << ",";
    out << "\n";
  }
  for (const auto& a : st.agents)
    out << "a" << a.id << " t" << a.team << " p" << a.position.row << "," << a.position.col
        << " am" << a.ammo << " bs" << a.blast_strength << " k" << a.can_kick << " al" << a.alive
        << "\n";
  for (const auto& b : st.bombs)
    out << "b p" << b.position.row << "," << b.position.col << " o" << b.owner_id << " f"
        << b.fuse << " s" << b.blast_strength << " m"
        << (b.moving_dir ? static_cast<int>(*b.moving_dir) : -1) << " kk" << b.was_kicked << "\n";
  for (const auto& f : st.flames) {
    out << "f p" << f.position.row << "," << f.position.col << " t" << f.ttl << " o";
    for (const auto& ow : f.owners) out << ow.id << (ow.kicked ? "k" : "") << ";";
    out << "\n";
  }
  if (st.result) out << "r " << result_to_string(*st.result) << "\n";
  return out.str();
}

uint64_t state_hash(const GameState& st) {
  std::string s = serialize_state(st);
  uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace pommer
