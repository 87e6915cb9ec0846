#include "pommer/json_io.hpp"

namespace pommer {

namespace {
ordered_json grid_to_json(const Grid& g) {
  ordered_json rows = ordered_json::array();
  for (const auto& row : g) {
    ordered_json r = ordered_json::array();
    for (int v : row) r.push_back(v);
    rows.push_back(std::move(r));
  }
  return rows;
}
}  // namespace

ordered_json config_to_json(const MatchConfig& c) {
  return ordered_json{{"max_steps", c.max_steps},
                      {"view_radius", c.view_radius},
                      {"initial_ammo_team0", c.initial_ammo_team0},
                      {"initial_ammo_team1", c.initial_ammo_team1},
                      {"initial_blast_team0", c.initial_blast_team0},
                      {"initial_blast_team1", c.initial_blast_team1},
                      {"powerup_probability", c.powerup_probability},
                      {"reward_shaping_enabled", c.reward_shaping_enabled},
                      {"bomb_fuse", c.bomb_fuse},
                      {"flame_ttl", c.flame_ttl},
                      {"num_rigid", c.num_rigid},
                      {"num_wood", c.num_wood},
                      {"tie_reward", c.tie_reward}};
}

MatchConfig config_from_json(const ordered_json& j) {
  MatchConfig c;
  c.max_steps = j.value("max_steps", c.max_steps);
  c.view_radius = j.value("view_radius", c.view_radius);
  c.initial_ammo_team0 = j.value("initial_ammo_team0", c.initial_ammo_team0);
  c.initial_ammo_team1 = j.value("initial_ammo_team1", c.initial_ammo_team1);
  c.initial_blast_team0 = j.value("initial_blast_team0", c.initial_blast_team0);
  c.initial_blast_team1 = j.value("initial_blast_team1", c.initial_blast_team1);
  c.powerup_probability = j.value("powerup_probability", c.powerup_probability);
  c.reward_shaping_enabled = j.value("reward_shaping_enabled", c.reward_shaping_enabled);
  c.bomb_fuse = j.value("bomb_fuse", c.bomb_fuse);
  c.flame_ttl = j.value("flame_ttl", c.flame_ttl);
  c.num_rigid = j.value("num_rigid", c.num_rigid);
  c.num_wood = j.value("num_wood", c.num_wood);
  c.tie_reward = j.value("tie_reward", c.tie_reward);
  return c;
}

ordered_json result_to_json(const GameResult& r) {
  ordered_json j;
  j["outcome"] = r.outcome == Outcome::Win ? "win" : "tie";
  j["winning_team"] = r.winning_team;
  switch (r.cause) {
    case Cause::Elimination: j["cause"] = "elimination"; break;
    case Cause::Timeout: j["cause"] = "timeout"; break;
    case Cause::SimultaneousDeath: j["cause"] = "simultaneous_death"; break;
  }
  return j;
}

GameResult result_from_json(const ordered_json& j) {
  GameResult r;
  r.outcome = j.at("outcome") == "win" ? Outcome::Win : Outcome::Tie;
  r.winning_team = j.at("winning_team");
  std::string c = j.at("cause");
  r.cause = c == "elimination" ? Cause::Elimination
            : c == "timeout"   ? Cause::Timeout
                               : Cause::SimultaneousDeath;
  return r;
}

ordered_json observation_to_json(const Observation& o) {
  return ordered_json{{"agent_id", o.agent_id},
                      {"step", o.step},
                      {"view_radius", o.view_radius},
                      {"cell", grid_to_json(o.cell)},
                      {"bomb_blast", grid_to_json(o.bomb_blast)},
                      {"bomb_fuse", grid_to_json(o.bomb_fuse)},
                      {"flame", grid_to_json(o.flame)},
                      {"occupancy", grid_to_json(o.occupancy)},
                      {"position", ordered_json::array({o.position.row, o.position.col})},
                      {"ammo", o.ammo},
                      {"blast_strength", o.blast_strength},
                      {"can_kick", o.can_kick},
                      {"alive", o.alive},
                      {"alive_ids", o.alive_ids},
                      {"teammate_id", o.teammate_id},
                      {"enemy_ids", o.enemy_ids}};
}

}  // namespace pommer
