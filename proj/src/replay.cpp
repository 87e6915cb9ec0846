#include "pommer/replay.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pommer/json_io.hpp"

namespace pommer {

using json = nlohmann::ordered_json;

void write_record(const EpisodeRecord& rec, std::ostream& out) {
  json header{{"type", "header"},
              {"engine_version", rec.engine_version},
              {"episode_id", rec.episode_id},
              {"seed", rec.seed},
              {"config", config_to_json(rec.config)},
              {"team", rec.team_kind},
              {"opponent", rec.opponent_kind}};
  out << header.dump() << "\n";
  for (size_t t = 0; t < rec.actions.size(); ++t) {
    json line{{"t", t},
              {"a", {static_cast<int>(rec.actions[t][0]), static_cast<int>(rec.actions[t][1]),
                     static_cast<int>(rec.actions[t][2]), static_cast<int>(rec.actions[t][3])}}};
    out << line.dump() << "\n";
  }
  json footer{{"type", "footer"}};
  if (rec.result) footer["result"] = result_to_json(*rec.result);
  json rewards = json::object();
  for (const auto& [id, r] : rec.rewards) {
    rewards[std::to_string(id)] =
        json{{"E", r.E}, {"K", r.K}, {"T", r.T}, {"total", r.total}};
  }
  footer["rewards"] = rewards;
  json positions = json::object();
  for (int i = 0; i < kNumAgents; ++i) {
    json series = json::array();
    for (Pos p : rec.positions[i]) series.push_back(json::array({p.row, p.col}));
    positions[std::to_string(i)] = series;
  }
  footer["positions"] = positions;
  out << footer.dump() << "\n";
}

void write_record_file(const EpisodeRecord& rec, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open record file for writing: " + path);
  write_record(rec, out);
}

EpisodeRecord read_record(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty record stream");
  json header = json::parse(line);
  if (header.value("type", "") != "header") throw std::runtime_error("missing record header");
  EpisodeRecord rec;
  rec.engine_version = header.at("engine_version");
  if (rec.engine_version != kEngineVersion)
    throw std::runtime_error("engine version mismatch: record=" + rec.engine_version +
                             " engine=" + kEngineVersion);
  rec.episode_id = header.at("episode_id");
  rec.seed = header.at("seed");
  rec.config = config_from_json(header.at("config"));
  rec.team_kind = header.value("team", "");
  rec.opponent_kind = header.value("opponent", "");

  bool closed = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    if (j.value("type", "") == "footer") {
      if (j.contains("result")) rec.result = result_from_json(j["result"]);
      if (j.contains("rewards")) {
        for (auto& [key, val] : j["rewards"].items()) {
          EpisodeRecord::AgentRewards r;
          r.E = val.at("E");
          r.K = val.at("K");
          r.T = val.at("T").get<std::vector<double>>();
          r.total = val.at("total").get<std::vector<double>>();
          rec.rewards[std::stoi(key)] = std::move(r);
        }
      }
      if (j.contains("positions")) {
        for (auto& [key, val] : j["positions"].items()) {
          int id = std::stoi(key);
          for (const auto& p : val)
            rec.positions[id].push_back(Pos{p.at(0).get<int>(), p.at(1).get<int>()});
        }
      }
      closed = true;
      break;
    }
    size_t t = j.at("t");
    if (t != rec.actions.size()) throw std::runtime_error("record has out-of-order steps");
    const auto& a = j.at("a");
    if (a.size() != kNumAgents) throw std::runtime_error("malformed action line");
    std::array<Action, kNumAgents> acts{};
    for (int i = 0; i < kNumAgents; ++i) acts[i] = static_cast<Action>(a[i].get<int>());
    rec.actions.push_back(acts);
  }
  if (!closed) throw std::runtime_error("truncated record: footer missing");
  return rec;
}

EpisodeRecord read_record_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open record file: " + path);
  return read_record(in);
}

ReplayOutcome replay(const EpisodeRecord& rec) {
  ReplayOutcome out;
  GameState st = make_initial_state(rec.seed, rec.config);
  for (int i = 0; i < kNumAgents; ++i) out.positions[i].push_back(st.agents[i].position);
  for (const auto& acts : rec.actions) {
    out.events.push_back(step(st, acts));
    for (int i = 0; i < kNumAgents; ++i)
      if (st.agents[i].alive) out.positions[i].push_back(st.agents[i].position);
  }
  out.final_state = std::move(st);
  return out;
}

}  // namespace pommer
