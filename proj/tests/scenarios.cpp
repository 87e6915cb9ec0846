#include "scenarios.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace pommer::testing {

GameState blank_state(MatchConfig config) {
  GameState st;
  st.config = config;
  for (auto& row : st.board) row.fill(CellKind::Passage);
  for (auto& row : st.hidden) row.fill(CellKind::Passage);
  const std::array<Pos, kNumAgents> corners = {Pos{0, 0}, Pos{0, kBoardSize - 1},
                                               Pos{kBoardSize - 1, kBoardSize - 1},
                                               Pos{kBoardSize - 1, 0}};
  for (int i = 0; i < kNumAgents; ++i) {
    AgentEntity& a = st.agents[i];
    a.id = i;
    a.team = i % 2;
    a.position = corners[i];
    a.ammo = (a.team == 0) ? config.initial_ammo_team0 : config.initial_ammo_team1;
    a.blast_strength = (a.team == 0) ? config.initial_blast_team0 : config.initial_blast_team1;
    a.can_kick = false;
    a.alive = true;
  }
  st.rng_state = 42;
  return st;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

namespace {

std::vector<Pos> flame_cells(const GameState& st) {
  std::vector<Pos> cells;
  for (const auto& f : st.flames) cells.push_back(f.position);
  std::sort(cells.begin(), cells.end(), [](Pos a, Pos b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return cells;
}

std::string show(const std::vector<Pos>& cells) {
  std::ostringstream out;
  for (Pos p : cells) out << "(" << p.row << "," << p.col << ") ";
  return out.str();
}

void require_flames(const GameState& st, std::vector<Pos> expected, const std::string& what) {
  std::sort(expected.begin(), expected.end(), [](Pos a, Pos b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  auto got = flame_cells(st);
  require(got == expected,
          what + ": expected flames " + show(expected) + "but got " + show(got));
}

const std::array<Action, kNumAgents> kAllStop = {Action::Stop, Action::Stop, Action::Stop,
                                                 Action::Stop};

std::array<Action, kNumAgents> one(int id, Action a) {
  auto acts = kAllStop;
  acts[id] = a;
  return acts;
}

}  // namespace

const std::vector<Scenario>& engine_scenarios() {
  static const std::vector<Scenario> scenarios = {

      {"blast_clips_at_rigid_and_board_edge",
       [] {
         GameState st = blank_state();
         st.board[4][5] = CellKind::Rigid;
         st.bombs.push_back(Bomb{{5, 5}, 0, 1, 2, {}, false});
         step(st, kAllStop);
         require_flames(st, {{5, 5}, {6, 5}, {5, 4}, {5, 6}}, "clipped blast");
         for (const auto& f : st.flames)
           require(f.ttl == st.config.flame_ttl, "fresh flame must carry the full ttl");
         require(st.bombs.empty(), "detonated bomb must be removed");
       }},

      {"wood_absorbs_ray_and_reveals_powerup",
       [] {
         GameState st = blank_state();
         st.board[5][6] = CellKind::Wood;
         st.hidden[5][6] = CellKind::PowerupKick;
         st.bombs.push_back(Bomb{{5, 5}, 0, 1, 3, {}, false});
         StepEvents ev = step(st, kAllStop);
         auto got = flame_cells(st);
         require(std::find(got.begin(), got.end(), Pos{5, 6}) != got.end(),
                 "wood cell must burn");
         require(std::find(got.begin(), got.end(), Pos{5, 7}) == got.end(),
                 "ray must stop inside the wood");
         require(st.board[5][6] == CellKind::PowerupKick, "blasted wood reveals its powerup");
         require(st.hidden[5][6] == CellKind::Passage, "revealed powerup leaves hidden layer");
         require(ev.wood_blasted[0].size() == 1 && ev.wood_blasted[0][0] == Pos{5, 6},
                 "owner gets wood credit");
       }},

      {"chain_detonation_triggers_neighbor",
       [] {
         GameState st = blank_state();
         st.bombs.push_back(Bomb{{5, 5}, 0, 1, 2, {}, false});
         st.bombs.push_back(Bomb{{5, 6}, 1, 9, 2, {}, false});
         step(st, kAllStop);
         require(st.bombs.empty(), "chained bomb must detonate too");
         auto got = flame_cells(st);
         require(std::find(got.begin(), got.end(), Pos{5, 7}) != got.end(),
                 "second bomb's ray must appear");
         require(st.agents[0].ammo == 2 && st.agents[1].ammo == 2,
                 "both owners get their ammo back");
       }},

      {"chain_uses_preblast_board",
       [] {
         GameState st = blank_state();
         st.board[5][6] = CellKind::Wood;
         st.bombs.push_back(Bomb{{5, 5}, 0, 1, 3, {}, false});
         st.bombs.push_back(Bomb{{5, 7}, 1, 9, 2, {}, false});
         step(st, kAllStop);
         require(st.bombs.size() == 1, "bomb behind wood must survive the blast");
         require(st.bombs[0].fuse == 8, "surviving bomb only ticks");
         require(st.board[5][6] == CellKind::Passage, "wood still gets destroyed");
       }},

      {"fuse_ticks_down_without_detonation",
       [] {
         GameState st = blank_state();
         st.bombs.push_back(Bomb{{5, 5}, 0, 3, 2, {}, false});
         step(st, kAllStop);
         require(st.bombs.size() == 1 && st.bombs[0].fuse == 2, "fuse must tick by one");
         require(st.flames.empty(), "no flames before the fuse runs out");
       }},

      {"flame_ttl_decays_then_expires",
       [] {
         GameState st = blank_state();
         st.flames.push_back(Flame{{3, 3}, 2, {FlameOwner{1, false}}});
         step(st, kAllStop);
         require(st.flames.size() == 1 && st.flames[0].ttl == 1, "flame must decay to ttl 1");
         step(st, kAllStop);
         require(st.flames.empty(), "flame must be gone after its ttl");
       }},

      {"standing_flame_detonates_bomb",
       [] {
         GameState st = blank_state();
         st.bombs.push_back(Bomb{{5, 5}, 0, 9, 2, {}, false});
         st.flames.push_back(Flame{{5, 5}, 2, {FlameOwner{1, false}}});
         step(st, kAllStop);
         require(st.bombs.empty(), "a flame on the bomb cell must set it off");
       }},

      {"basic_move_and_cells_entered",
       [] {
         GameState st = blank_state();
         StepEvents ev = step(st, one(0, Action::Down));
         require(st.agents[0].position == Pos{1, 0}, "agent must move down");
         require(ev.cells_entered[0] && *ev.cells_entered[0] == Pos{1, 0},
                 "entered cell must be reported");
         require(!ev.cells_entered[1], "non-movers report no entered cell");
       }},

      {"move_into_rigid_is_blocked",
       [] {
         GameState st = blank_state();
         st.board[1][0] = CellKind::Rigid;
         step(st, one(0, Action::Down));
         require(st.agents[0].position == Pos{0, 0}, "rigid wall must block the move");
       }},

      {"move_off_board_is_blocked",
       [] {
         GameState st = blank_state();
         step(st, one(0, Action::Up));
         require(st.agents[0].position == Pos{0, 0}, "board edge must block the move");
       }},

      {"same_target_conflict_bounces_both",
       [] {
         GameState st = blank_state();
         st.agents[0].position = {5, 4};
         st.agents[1].position = {5, 6};
         auto acts = kAllStop;
         acts[0] = Action::Right;
         acts[1] = Action::Left;
         step(st, acts);
         require(st.agents[0].position == Pos{5, 4} && st.agents[1].position == Pos{5, 6},
                 "both contenders must bounce back");
       }},

      {"swap_conflict_bounces_both",
       [] {
         GameState st = blank_state();
         st.agents[0].position = {5, 5};
         st.agents[1].position = {5, 6};
         auto acts = kAllStop;
         acts[0] = Action::Right;
         acts[1] = Action::Left;
         step(st, acts);
         require(st.agents[0].position == Pos{5, 5} && st.agents[1].position == Pos{5, 6},
                 "swapping agents must bounce back");
       }},

      {"stayer_blocks_mover",
       [] {
         GameState st = blank_state();
         st.agents[0].position = {5, 5};
         st.agents[1].position = {5, 6};
         step(st, one(0, Action::Right));
         require(st.agents[0].position == Pos{5, 5}, "a standing agent must block the cell");
       }},

      {"conflict_reverts_cascade",
       [] {
         GameState st = blank_state();
         st.agents[0].position = {5, 4};
         st.agents[1].position = {5, 5};
         st.agents[2].position = {5, 6};
         auto acts = kAllStop;
         acts[0] = Action::Right;
         acts[1] = Action::Right;
         step(st, acts);
         require(st.agents[1].position == Pos{5, 5}, "blocked mover must bounce");
         require(st.agents[0].position == Pos{5, 4},
                 "bounce must cascade to the follower");
       }},

      {"bomb_placement_spends_ammo",
       [] {
         GameState st = blank_state();
         StepEvents ev = step(st, one(0, Action::Bomb));
         (void)ev;
         require(st.bombs.size() == 1, "bomb must be placed");
         require(st.bombs[0].position == Pos{0, 0} && st.bombs[0].owner_id == 0,
                 "bomb placed under its owner");
         require(st.bombs[0].fuse == st.config.bomb_fuse, "fresh bomb carries the full fuse");
         require(st.bombs[0].blast_strength == st.agents[0].blast_strength,
                 "bomb inherits the owner's blast strength");
         require(st.agents[0].ammo == 0, "placement must spend ammo");
         step(st, one(0, Action::Bomb));
         require(st.bombs.size() == 1, "no ammo means no second bomb");
       }},

      {"detonation_refunds_ammo",
       [] {
         GameState st = blank_state();
         st.agents[0].ammo = 0;
         st.bombs.push_back(Bomb{{5, 5}, 0, 1, 2, {}, false});
         step(st, kAllStop);
         require(st.agents[0].ammo == 1, "owner must get the ammo back on detonation");
       }},

      {"nonkicker_cannot_enter_bomb_cell",
       [] {
         GameState st = blank_state();
         st.agents[0].position = {5, 4};
         st.bombs.push_back(Bomb{{5, 5}, 1, 9, 2, {}, false});
         step(st, one(0, Action::Right));
         require(st.agents[0].position == Pos{5, 4}, "bomb must block a non-kicker");
       }},

      {"kick_moves_bomb_and_keeps_rolling",
       [] {
         GameState st = blank_state();
         st.agents[0].position = {5, 4};
         st.agents[0].can_kick = true;
         st.bombs.push_back(Bomb{{5, 5}, 1, 5, 2, {}, false});
         StepEvents ev = step(st, one(0, Action::Right));
         require(st.agents[0].position == Pos{5, 5}, "kicker must step onto the bomb cell");
         require(st.bombs[0].position == Pos{5, 6}, "kicked bomb must be pushed one cell");
         require(st.bombs[0].moving_dir && *st.bombs[0].moving_dir == Action::Right,
                 "kicked bomb must keep its direction");
         require(st.bombs[0].was_kicked, "kicked flag must be set");
         require(ev.own_bomb_kicked[1], "the owner must learn the bomb was kicked");
         step(st, kAllStop);
         require(st.bombs[0].position == Pos{5, 7}, "kicked bomb must keep rolling");
       }},

      {"kick_blocked_by_obstacle_behind",
       [] {
         GameState st = blank_state();
         st.agents[0].position = {5, 4};
         st.agents[0].can_kick = true;
         st.board[5][6] = CellKind::Rigid;
         st.bombs.push_back(Bomb{{5, 5}, 1, 9, 2, {}, false});
         step(st, one(0, Action::Right));
         require(st.agents[0].position == Pos{5, 4},
                 "a kick with no room behind the bomb must fail");
         require(st.bombs[0].position == Pos{5, 5}, "blocked kick must not move the bomb");
       }},

      {"rolling_bomb_stops_at_wall",
       [] {
         GameState st = blank_state();
         st.board[5][6] = CellKind::Rigid;
         st.bombs.push_back(Bomb{{5, 5}, 1, 9, 2, Action::Right, true});
         step(st, kAllStop);
         require(st.bombs[0].position == Pos{5, 5}, "wall must stop the rolling bomb");
         require(!st.bombs[0].moving_dir, "stopped bomb must lose its direction");
       }},

      {"flame_kills_agent_and_marks_recent_death",
       [] {
         GameState st = blank_state();
         st.flames.push_back(Flame{{1, 0}, 2, {FlameOwner{1, false}}});
         StepEvents ev = step(st, one(0, Action::Down));
         require(!st.agents[0].alive, "agent walking into a burning cell must die");
         require(ev.deaths.size() == 1 && ev.deaths[0].victim == 0 &&
                     ev.deaths[0].position == Pos{1, 0},
                 "death event must name the victim and the cell");
         require(ev.deaths[0].killers.size() == 1 && ev.deaths[0].killers[0].id == 1,
                 "death event must carry the flame owner");
         require(st.recent_deaths.size() == 1 && st.recent_deaths[0].first == 0 &&
                     st.recent_deaths[0].second == Pos{1, 0},
                 "the death cell must stay marked for one step");
         step(st, kAllStop);
         require(st.recent_deaths.empty(), "death markers must last exactly one step");
       }},

      {"elimination_win_for_team_zero",
       [] {
         GameState st = blank_state();
         st.agents[1].position = {5, 4};
         st.agents[3].position = {5, 6};
         st.bombs.push_back(Bomb{{5, 5}, 0, 1, 2, {}, false});
         step(st, kAllStop);
         require(st.result.has_value(), "episode must end");
         require(st.result->outcome == Outcome::Win && st.result->winning_team == 0,
                 "team 0 must win by elimination");
         require(st.result->cause == Cause::Elimination, "cause must be elimination");
       }},

      {"simultaneous_wipeout_is_a_tie",
       [] {
         GameState st = blank_state();
         st.agents[0].position = {4, 5};
         st.agents[1].position = {5, 4};
         st.agents[2].position = {6, 5};
         st.agents[3].position = {5, 6};
         st.bombs.push_back(Bomb{{5, 5}, 0, 1, 2, {}, false});
         step(st, kAllStop);
         require(st.result.has_value() && st.result->outcome == Outcome::Tie,
                 "wiping both teams must tie");
         require(st.result->cause == Cause::SimultaneousDeath,
                 "cause must be simultaneous death");
         require(st.recent_deaths.size() == 4, "all four deaths must be marked");
       }},

      {"timeout_is_a_tie",
       [] {
         MatchConfig cfg;
         cfg.max_steps = 1;
         GameState st = blank_state(cfg);
         step(st, kAllStop);
         require(st.result.has_value() && st.result->outcome == Outcome::Tie &&
                     st.result->cause == Cause::Timeout,
                 "hitting max steps must tie by timeout");
       }},

      {"powerups_apply_and_vanish",
       [] {
         GameState st = blank_state();
         st.board[1][0] = CellKind::PowerupExtraBomb;
         st.board[0][9] = CellKind::PowerupIncrRange;
         st.board[9][0] = CellKind::PowerupKick;
         auto acts = kAllStop;
         acts[0] = Action::Down;
         acts[1] = Action::Left;
         acts[3] = Action::Up;
         StepEvents ev = step(st, acts);
         require(st.agents[0].ammo == 2, "extra bomb must raise ammo");
         require(st.agents[1].blast_strength == 3, "range powerup must raise blast strength");
         require(st.agents[3].can_kick, "kick powerup must enable kicking");
         require(st.board[1][0] == CellKind::Passage && st.board[0][9] == CellKind::Passage &&
                     st.board[9][0] == CellKind::Passage,
                 "consumed powerups must leave the board");
         require(ev.powerups_picked[0] == 1 && ev.powerups_picked[1] == 1 &&
                     ev.powerups_picked[3] == 1,
                 "pickups must be reported");
       }},

      {"dead_agents_do_not_act",
       [] {
         GameState st = blank_state();
         st.agents[1].alive = false;
         st.agents[1].position = {5, 5};
         step(st, one(1, Action::Down));
         require(st.agents[1].position == Pos{5, 5}, "dead agents must not move");
       }},

      {"merged_flame_takes_max_ttl_and_both_owners",
       [] {
         GameState st = blank_state();
         st.flames.push_back(Flame{{5, 6}, 2, {FlameOwner{1, false}}});
         st.bombs.push_back(Bomb{{5, 5}, 0, 1, 2, {}, false});
         step(st, kAllStop);
         const Flame* merged = nullptr;
         for (const auto& f : st.flames)
           if (f.position == Pos{5, 6}) merged = &f;
         require(merged != nullptr, "merged cell must still burn");
         require(merged->ttl == st.config.flame_ttl, "merge must take the max ttl");
         require(merged->owners.size() == 2, "merge must keep both owners");
       }},

      {"step_after_finish_throws",
       [] {
         MatchConfig cfg;
         cfg.max_steps = 1;
         GameState st = blank_state(cfg);
         step(st, kAllStop);
         bool threw = false;
         try {
           step(st, kAllStop);
         } catch (const std::logic_error&) {
           threw = true;
         }
         require(threw, "stepping a finished episode must throw");
       }},
  };
  return scenarios;
}

}  // namespace pommer::testing
