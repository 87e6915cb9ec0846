#include "pommer/tracker.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace pommer {

namespace {
constexpr double kCellReward = 0.01;
constexpr double kPowerupReward = 0.01;
constexpr double kWoodReward = 0.01;
constexpr double kOpponentKill = 0.50;
constexpr double kTeammateKill = 0.50;
constexpr double kOwnDeath = 1.00;
}  // namespace

void Tracker::reset(const Observation& initial) {
  agent_id_ = initial.agent_id;
  expected_step_ = initial.step + 1;
  prev_ = initial;
  initialized_ = true;
  visited_.clear();
  credited_wood_.clear();
  credited_victims_.clear();
  bombs_.clear();
  burning_.clear();
  kills_.clear();
  cumulative_ = {};
  // the starting cell counts as already visited
  visited_.insert({initial.position.row, initial.position.col});
}

std::vector<Pos> Tracker::own_ray(const Observation& view, Pos origin, int strength) const {
  // Clipped like the engine's blast, but truncated at fog: coverage that was
  // never observed cannot earn credit.
  std::vector<Pos> cells{origin};
  for (Action dir : {Action::Up, Action::Left, Action::Down, Action::Right}) {
    Pos p = origin;
    for (int d = 1; d < strength; ++d) {
      p = neighbor(p, dir);
      if (!in_bounds(p) || view.cell[p.row][p.col] == kFog) break;
      CellKind k = static_cast<CellKind>(view.cell[p.row][p.col]);
      if (k == CellKind::Rigid) break;
      cells.push_back(p);
      if (k == CellKind::Wood) break;
    }
  }
  return cells;
}

void Tracker::credit_deaths(const Observation& obs, const std::vector<int>& died,
                            const std::vector<Pos>& ray) {
  for (int victim : died) {
    if (victim == agent_id_ || credited_victims_.count(victim)) continue;
    // a dying agent is visible at its death cell for exactly this step
    Pos death_pos;
    bool seen = false;
    for (int r = 0; r < kBoardSize && !seen; ++r)
      for (int c = 0; c < kBoardSize && !seen; ++c)
        if (obs.occupancy[r][c] == victim && obs.cell[r][c] != kFog) {
          death_pos = {r, c};
          seen = true;
        }
    if (!seen) continue;
    if (std::find(ray.begin(), ray.end(), death_pos) == ray.end()) continue;
    credited_victims_.insert(victim);
    bool teammate = victim == prev_.teammate_id;
    kills_.push_back(KillEvent{victim, teammate, obs.step, death_pos});
    if (teammate)
      cumulative_.teammate_kills++;
    else
      cumulative_.opponent_kills++;
  }
}

double Tracker::update(const Observation& obs, Action own_action) {
  if (!initialized_) throw std::logic_error("Tracker::update before reset");
  if (obs.step != expected_step_)
    throw std::logic_error("Tracker::update out of order: got step " + std::to_string(obs.step) +
                           ", expected " + std::to_string(expected_step_));
  if (obs.agent_id != agent_id_) throw std::logic_error("Tracker::update with foreign observation");

  double t_reward = 0.0;

  if (obs.alive) {
    if (visited_.insert({obs.position.row, obs.position.col}).second) {
      t_reward += kCellReward;
      cumulative_.cells_visited++;
    }
    int prev_kind = prev_.cell[obs.position.row][obs.position.col];
    if (prev_kind != kFog && is_powerup(static_cast<CellKind>(prev_kind))) {
      t_reward += kPowerupReward;
      cumulative_.powerups++;
    }
  }

  std::vector<int> died;
  for (int id : prev_.alive_ids)
    if (!obs.is_alive(id)) died.push_back(id);

  // credit everything a just-detonated own bomb can prove: wood on the ray,
  // deaths on the ray, plus a lingering ray for the flame's remaining life
  std::vector<BurningRay> fresh;
  auto credit_detonation = [&](Pos origin, int strength) {
    std::vector<Pos> ray = own_ray(prev_, origin, strength);
    for (Pos p : ray) {
      if (prev_.cell[p.row][p.col] == static_cast<int>(CellKind::Wood) &&
          obs.cell[p.row][p.col] != static_cast<int>(CellKind::Wood) &&
          obs.cell[p.row][p.col] != kFog && credited_wood_.insert({p.row, p.col}).second) {
        t_reward += kWoodReward;
        cumulative_.wood_blasted++;
      }
    }
    credit_deaths(obs, died, ray);
    if (flame_ttl_ > 1) fresh.push_back(BurningRay{std::move(ray), flame_ttl_ - 1});
  };

  std::vector<TrackedBomb> keep;
  for (const TrackedBomb& b : bombs_) {
    if (!obs.visible(b.position)) continue;  // left the window: invalidated for good
    if (obs.bomb_blast[b.position.row][b.position.col] > 0) {
      TrackedBomb nb = b;
      nb.fuse = obs.bomb_fuse[b.position.row][b.position.col];
      keep.push_back(nb);
      continue;
    }
    if (obs.flame[b.position.row][b.position.col] > 0) {
      credit_detonation(b.position, b.strength);
      continue;
    }
    // gone without a flame: kicked or otherwise unprovable, drop the credit
  }
  bombs_ = std::move(keep);

  // only pre-existing rays age here; rays born this update start aging next one
  for (auto& ray : burning_) {
    credit_deaths(obs, died, ray.cells);
    ray.remaining--;
  }
  std::erase_if(burning_, [](const BurningRay& r) { return r.remaining <= 0; });

  // a bomb we just placed becomes tracked once it shows up in our view
  if (own_action == Action::Bomb && prev_.alive && prev_.ammo > 0) {
    Pos p = prev_.position;
    if (prev_.bomb_blast[p.row][p.col] == 0) {
      if (obs.bomb_blast[p.row][p.col] > 0) {
        bombs_.push_back(
            TrackedBomb{p, obs.bomb_fuse[p.row][p.col], obs.bomb_blast[p.row][p.col]});
      } else if (obs.flame[p.row][p.col] > 0) {
        // placed and chain-detonated within the same step: placement was
        // certain (ammo and a free cell), and a flame with no bomb left on
        // the cell proves the chain fired
        credit_detonation(p, prev_.blast_strength);
      }
    }
  }
  burning_.insert(burning_.end(), std::make_move_iterator(fresh.begin()),
                  std::make_move_iterator(fresh.end()));

  prev_ = obs;
  expected_step_++;
  return t_reward;
}

std::pair<double, double> Tracker::terminal_rewards(const GameResult& result, bool own_alive,
                                                    double tie_reward) const {
  double e;
  if (result.outcome == Outcome::Tie)
    e = tie_reward;
  else
    e = (result.winning_team == agent_id_ % 2) ? 1.0 : -1.0;
  double k = kOpponentKill * cumulative_.opponent_kills -
             kTeammateKill * cumulative_.teammate_kills - (own_alive ? 0.0 : kOwnDeath);
  return {e, k};
}

double Tracker::compose(double E, double K, double T, bool terminal, bool shaping_enabled) {
  if (!shaping_enabled) return terminal ? E : 0.0;
  return terminal ? 0.5 * E + 0.5 * K + T : T;
}

}  // namespace pommer
