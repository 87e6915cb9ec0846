#include "pommer/external_policy.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>

#include "pommer/json_io.hpp"

namespace pommer {

using json = nlohmann::ordered_json;

ExternalPolicy::ExternalPolicy(std::string command, int move_budget_ms)
    : command_(std::move(command)), budget_ms_(move_budget_ms) {}

ExternalPolicy::~ExternalPolicy() { shutdown(); }

void ExternalPolicy::spawn() {
  // a dead endpoint must surface as EndpointError, not a SIGPIPE kill
  signal(SIGPIPE, SIG_IGN);
  int in_pipe[2], out_pipe[2];
  if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0)
    throw EndpointError("pipe() failed for external policy");
  pid_ = fork();
  if (pid_ < 0) throw EndpointError("fork() failed for external policy");
  if (pid_ == 0) {
    dup2(in_pipe[0], STDIN_FILENO);
    dup2(out_pipe[1], STDOUT_FILENO);
    close(in_pipe[0]);
    close(in_pipe[1]);
    close(out_pipe[0]);
    close(out_pipe[1]);
    execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }
  close(in_pipe[0]);
  close(out_pipe[1]);
  to_child_ = in_pipe[1];
  from_child_ = out_pipe[0];
  buffer_.clear();
}

void ExternalPolicy::shutdown() {
  if (to_child_ >= 0) close(to_child_);
  if (from_child_ >= 0) close(from_child_);
  to_child_ = from_child_ = -1;
  if (pid_ > 0) {
    int status = 0;
    if (waitpid(pid_, &status, WNOHANG) == 0) {
      kill(pid_, SIGTERM);
      waitpid(pid_, &status, 0);
    }
    pid_ = -1;
  }
}

void ExternalPolicy::send_line(const std::string& line) {
  std::string payload = line + "\n";
  size_t off = 0;
  while (off < payload.size()) {
    ssize_t n = write(to_child_, payload.data() + off, payload.size() - off);
    if (n <= 0) throw EndpointError("external policy endpoint is not accepting input");
    off += static_cast<size_t>(n);
  }
}

std::string ExternalPolicy::read_line(int timeout_ms) {
  auto deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(timeout_ms);
  for (;;) {
    size_t nl = buffer_.find('\n');
    if (nl != std::string::npos) {
      std::string line = buffer_.substr(0, nl);
      buffer_.erase(0, nl + 1);
      return line;
    }
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
                         deadline - std::chrono::steady_clock::now())
                         .count();
    if (remaining <= 0) return {};
    pollfd pfd{from_child_, POLLIN, 0};
    int rc = poll(&pfd, 1, static_cast<int>(remaining));
    if (rc == 0) return {};
    if (rc < 0) throw EndpointError("poll() failed on external policy");
    char chunk[4096];
    ssize_t n = read(from_child_, chunk, sizeof(chunk));
    if (n <= 0) throw EndpointError("external policy endpoint closed its output");
    buffer_.append(chunk, static_cast<size_t>(n));
  }
}

void ExternalPolicy::begin_episode(int agent_id, const MatchConfig& config) {
  shutdown();  // one process per episode; no state leaks across games
  spawn();
  json init{{"type", "init"}, {"agent_id", agent_id}, {"config", config_to_json(config)}};
  send_line(init.dump());
  // Handshake gets a generous budget; interpreters need startup time.
  std::string reply = read_line(std::max(budget_ms_, 5000));
  if (reply.empty()) throw EndpointError("external policy endpoint never sent ready");
  json j = json::parse(reply, nullptr, false);
  if (j.is_discarded() || j.value("type", "") != "ready")
    throw EndpointError("external policy endpoint sent a bad handshake: " + reply);
}

Action ExternalPolicy::act(const Observation& obs) {
  if (pid_ < 0) throw EndpointError("external policy used before begin_episode");
  json msg{{"type", "act"}, {"step", obs.step}, {"obs", observation_to_json(obs)}};
  send_line(msg.dump());
  std::string reply = read_line(budget_ms_);
  if (reply.empty()) {
    faults_++;
    return Action::Stop;
  }
  json j = json::parse(reply, nullptr, false);
  if (j.is_discarded() || j.value("type", "") != "action" || !j.contains("action") ||
      !j["action"].is_number_integer()) {
    faults_++;
    return Action::Stop;
  }
  int a = j["action"];
  if (a < 0 || a >= kNumActions) {
    faults_++;
    return Action::Stop;
  }
  return static_cast<Action>(a);
}

void ExternalPolicy::end_episode(const std::string& result) {
  if (pid_ < 0) return;
  try {
    json msg{{"type", "episode_end"}, {"result", result}};
    send_line(msg.dump());
  } catch (const EndpointError&) {
    // endpoint already gone; nothing left to tell it
  }
  shutdown();
}

}  // namespace pommer
