#pragma once

#include <memory>
#include <string>
#include <vector>

#include "pommer/rng.hpp"
#include "pommer/types.hpp"

namespace pommer {

enum class OpponentKind { ST, SS, SS_NB, EXT };

const char* opponent_acronym(OpponentKind k);   // ST / SS / SS-NB / EXT
const char* opponent_key(OpponentKind k);       // ST / SS / SS_NB / EXT (file keys)
OpponentKind opponent_from_string(const std::string& s);  // accepts both spellings

class Policy {
 public:
  virtual ~Policy() = default;
  virtual Action act(const Observation& obs) = 0;
  virtual void begin_episode(int /*agent_id*/, const MatchConfig& /*config*/) {}
  virtual void end_episode(const std::string& /*result*/) {}
  virtual int fault_count() const { return 0; }
};

// Always Stop.
Action act_static(const Observation& obs);

// Non-empty subset of the six actions whose one-step consequence is provably
// not death: avoids standing flames and the blast of fuse-1 bombs (chains
// included). Falls back to the full set when nothing is certainly safe.
std::vector<Action> filter_actions(const Observation& obs);

// The documented 5-rule heuristic: evade imminent blasts, grab nearby
// powerups, bomb wood/enemies when a retreat exists, approach targets by BFS,
// otherwise a seeded random legal move. `aggressive` prioritizes bombing and
// hunts enemies harder; it backs the EXT proxy opponent.
std::vector<Action> simple_ranked(const Observation& obs, Rng& rng, bool aggressive = false);
Action act_simple(const Observation& obs, Rng& rng);

Action act_smart_simple(const Observation& obs, Rng& rng);
Action act_smart_simple_nobomb(const Observation& obs, Rng& rng);

class StaticPolicy final : public Policy {
 public:
  Action act(const Observation& obs) override { return act_static(obs); }
};

class SimplePolicy final : public Policy {
 public:
  enum class Mode { Plain, Smart, SmartNoBomb };
  SimplePolicy(uint64_t seed, Mode mode, bool aggressive = false)
      : rng_(seed), mode_(mode), aggressive_(aggressive) {}
  Action act(const Observation& obs) override;

 private:
  Rng rng_;
  Mode mode_;
  bool aggressive_;
};

// EXT with an empty command resolves to the scripted aggressive-hunter proxy
// standing in for the trained opponent.
std::unique_ptr<Policy> make_policy(OpponentKind kind, uint64_t seed,
                                    const std::string& ext_command = "",
                                    int move_budget_ms = 100);

}  // namespace pommer
