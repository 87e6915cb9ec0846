#pragma once

#include <stdexcept>
#include <string>

#include "pommer/agents.hpp"

namespace pommer {

struct EndpointError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Newline-delimited JSON over the child process's standard streams:
//   -> {"type":"init","agent_id":k,"config":{...}}      <- {"type":"ready"}
//   -> {"type":"act","step":t,"obs":{...}}              <- {"type":"action","action":0..5}
//   -> {"type":"episode_end","result":"win|loss|tie"}   <- (none)
// A reply missing its per-move budget, or malformed, substitutes Stop and
// bumps the fault counter. A dead endpoint raises EndpointError.
class ExternalPolicy final : public Policy {
 public:
  explicit ExternalPolicy(std::string command, int move_budget_ms = 100);
  ~ExternalPolicy() override;

  ExternalPolicy(const ExternalPolicy&) = delete;
  ExternalPolicy& operator=(const ExternalPolicy&) = delete;

  void begin_episode(int agent_id, const MatchConfig& config) override;
  Action act(const Observation& obs) override;
  void end_episode(const std::string& result) override;
  int fault_count() const override { return faults_; }

 private:
  void spawn();
  void shutdown();
  void send_line(const std::string& line);
  // Empty return means timeout.
  std::string read_line(int timeout_ms);

  std::string command_;
  int budget_ms_;
  int faults_ = 0;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;
};

}  // namespace pommer
