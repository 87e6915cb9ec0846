#pragma once

#include <array>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pommer/agents.hpp"
#include "pommer/curriculum.hpp"
#include "pommer/replay.hpp"

namespace pommer {

// Team agents sit at ids 0 and 2; opponents at 1 and 3. Rewards are tracked
// for the playing team only.
EpisodeRecord run_episode(const std::array<Policy*, kNumAgents>& policies, uint64_t seed,
                          const MatchConfig& config);

struct PolicySpec {
  OpponentKind kind = OpponentKind::SS;
  std::string ext_command;  // only used for EXT
  int move_budget_ms = 100;
};

struct EvalRow {
  OpponentKind opponent;
  int games = 0;
  int wins = 0;
  int losses = 0;
  int ties = 0;
  double win_ratio() const { return games ? static_cast<double>(wins) / games : 0.0; }
  double loss_ratio() const { return games ? static_cast<double>(losses) / games : 0.0; }
  double tie_ratio() const { return games ? static_cast<double>(ties) / games : 0.0; }
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::string to_csv() const;
  ordered_json to_json() const;
};

// games_per_opponent episodes against each opponent kind with disjoint
// derived seeds; results are merged in episode order, so the report is
// byte-identical at any parallelism.
EvalReport run_tournament(const PolicySpec& team, const std::vector<OpponentKind>& opponents,
                          int games_per_opponent, uint64_t base_seed, const MatchConfig& config,
                          int parallelism,
                          const std::function<void(const EpisodeRecord&)>& sink = {});

struct CurriculumRunResult {
  long episodes = 0;
  std::map<OpponentKind, long> tallies;
  std::map<OpponentKind, long> target;  // full-budget tallies from the schedule
};

// Consumes opponent assignments in blocks of `parallelism` (a block yields
// 2*parallelism team-agent trajectories). `max_games` of 0 runs the full
// budget.
CurriculumRunResult run_curriculum(const CurriculumSchedule& schedule, const PolicySpec& team,
                                   uint64_t base_seed, const MatchConfig& config, int parallelism,
                                   long max_games, std::ostream* training_log,
                                   const std::function<void(const EpisodeRecord&)>& sink = {});

// Playing-team-only perturbation of initial ammo / blast strength.
MatchConfig ablation_config(int ammo, int blast, MatchConfig base = {});

// CSV per tracked agent per step: episode_id, agent_id, step, T, E, K, total.
void write_reward_log(const EpisodeRecord& rec, std::ostream& out, bool header = false);

// (observation, action) pairs for the playing team, one JSON object or CSV
// row per step, regenerated by replay.
enum class ExportFormat { Jsonl, Csv };
void export_trajectories(const std::vector<EpisodeRecord>& records, std::ostream& out,
                         ExportFormat format = ExportFormat::Jsonl);

}  // namespace pommer
