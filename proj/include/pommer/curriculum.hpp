#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pommer/agents.hpp"
#include "pommer/json_io.hpp"

namespace pommer {

inline constexpr long kWarmupGames = 5000;
inline constexpr long kTrainingGames = 95000;

struct PhaseSpec {
  std::map<OpponentKind, long> counts;
  bool value_only = false;
  long total() const;
};

struct CurriculumSchedule {
  std::string name;
  PhaseSpec warmup;  // 5k games, all opponents, value network only
  std::vector<PhaseSpec> phases;
  long total_games() const;  // warmup included
};

// The six named presets: agent0, agent20, agent40, agent60, focus, incrm.
CurriculumSchedule preset(const std::string& name);
const std::vector<std::string>& preset_names();

// Returns the first violation, or nullopt when the schedule is well-formed
// (non-negative counts, warmup of 5000, phases summing to 95000).
std::optional<std::string> validate(const CurriculumSchedule& schedule);

// Deterministic quota-balanced interleaving: within a phase the opponent with
// the largest remaining quota is drawn next, seed-stirred tie-breaks, so the
// final per-phase tallies match the configured quotas exactly even if a run stops early.
class ScheduleCursor {
 public:
  struct Draw {
    OpponentKind kind;
    bool value_only = false;
    int phase = -1;  // -1 for warmup
  };

  ScheduleCursor(const CurriculumSchedule& schedule, uint64_t seed);
  bool exhausted() const;
  Draw next();  // throws when the budget is exhausted
  long position() const { return position_; }

 private:
  CurriculumSchedule schedule_;
  uint64_t seed_;
  long position_ = 0;
  int phase_index_ = -1;  // -1 = warmup
  std::map<OpponentKind, long> remaining_;
  void load_phase();
};

// Convenience form for tests: replays the cursor up to games_played.
ScheduleCursor::Draw next_opponent(const CurriculumSchedule& schedule, long games_played,
                                   uint64_t seed);

ordered_json schedule_to_json(const CurriculumSchedule& schedule);
CurriculumSchedule schedule_from_json(const ordered_json& j);

}  // namespace pommer
