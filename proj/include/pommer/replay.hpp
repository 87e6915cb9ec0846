#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pommer/engine.hpp"
#include "pommer/types.hpp"

namespace pommer {

// Everything needed to reproduce an episode bit-exactly, plus the reward and
// position logs the analysis tools consume.
struct EpisodeRecord {
  std::string engine_version = kEngineVersion;
  uint64_t episode_id = 0;
  uint64_t seed = 0;
  MatchConfig config;
  std::string team_kind;      // display-free acronym, may be empty
  std::string opponent_kind;  // acronym, may be empty
  std::vector<std::array<Action, kNumAgents>> actions;
  std::optional<GameResult> result;

  struct AgentRewards {
    double E = 0, K = 0;
    std::vector<double> T;
    std::vector<double> total;
  };
  std::map<int, AgentRewards> rewards;                     // team agents 0 and 2
  std::array<std::vector<Pos>, kNumAgents> positions;      // includes the start cell
};

void write_record(const EpisodeRecord& rec, std::ostream& out);
void write_record_file(const EpisodeRecord& rec, const std::string& path);
EpisodeRecord read_record(std::istream& in);       // throws on version mismatch / truncation
EpisodeRecord read_record_file(const std::string& path);

struct ReplayOutcome {
  GameState final_state;
  std::vector<StepEvents> events;
  std::array<std::vector<Pos>, kNumAgents> positions;
};

// Re-simulates the record; bit-identical trajectory to the live run.
ReplayOutcome replay(const EpisodeRecord& rec);

}  // namespace pommer
