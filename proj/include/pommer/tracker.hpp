#pragma once

#include <set>
#include <utility>
#include <vector>

#include "pommer/types.hpp"

namespace pommer {

// Per-agent reward-shaping module. Works from the agent's own observation
// stream only; never touches engine ground truth. Credits for a tracked own
// bomb are dropped the moment the bomb leaves the window or is kicked, so
// false positives are impossible and missed credits are accepted.
class Tracker {
 public:
  struct KillEvent {
    int victim = 0;
    bool teammate = false;
    int step = 0;
    Pos position;
  };

  struct Cumulative {
    int cells_visited = 0;
    int powerups = 0;
    int wood_blasted = 0;
    int opponent_kills = 0;
    int teammate_kills = 0;
  };

  explicit Tracker(int flame_ttl = 2) : flame_ttl_(flame_ttl) {}

  void reset(const Observation& initial);

  // Call once per step, in order, with the post-step observation and the
  // action the agent took this step. Returns the intermediate reward T_t.
  double update(const Observation& obs, Action own_action);

  const std::vector<KillEvent>& kills() const { return kills_; }
  const Cumulative& cumulative() const { return cumulative_; }

  // E is the team terminal reward, K the kill-reward sum (opponent +0.50,
  // teammate -0.50, own death -1.00).
  std::pair<double, double> terminal_rewards(const GameResult& result, bool own_alive,
                                             double tie_reward = -1.0) const;

  // Reward composition: T for non-terminal steps, 0.5*E + 0.5*K + T at the
  // terminal step; with shaping disabled only the terminal E survives.
  static double compose(double E, double K, double T, bool terminal, bool shaping_enabled = true);

 private:
  struct TrackedBomb {
    Pos position;
    int fuse = 0;
    int strength = 0;
  };
  struct BurningRay {
    std::vector<Pos> cells;
    int remaining = 0;
  };

  std::vector<Pos> own_ray(const Observation& board_view, Pos origin, int strength) const;
  void credit_deaths(const Observation& obs, const std::vector<int>& died,
                     const std::vector<Pos>& ray);

  int flame_ttl_;
  int agent_id_ = 0;
  int expected_step_ = 0;
  bool initialized_ = false;
  Observation prev_;
  std::set<std::pair<int, int>> visited_;
  std::set<std::pair<int, int>> credited_wood_;
  std::set<int> credited_victims_;
  std::vector<TrackedBomb> bombs_;
  std::vector<BurningRay> burning_;
  std::vector<KillEvent> kills_;
  Cumulative cumulative_;
};

}  // namespace pommer
