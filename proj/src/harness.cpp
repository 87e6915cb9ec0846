#include "pommer/harness.hpp"

#include <atomic>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pommer/engine.hpp"
#include "pommer/json_io.hpp"
#include "pommer/tracker.hpp"

namespace pommer {

namespace {

std::unique_ptr<Policy> instantiate(const PolicySpec& spec, uint64_t seed) {
  return make_policy(spec.kind, seed, spec.ext_command, spec.move_budget_ms);
}

// Worker pool over independent episodes; each lane owns its state, policies
// and trackers. Results land in a preallocated slot per episode id, so the
// merged output does not depend on the parallelism degree.
void parallel_for(size_t count, int parallelism, const std::function<void(size_t)>& body) {
  if (parallelism <= 1) {
    for (size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<size_t> cursor{0};
  std::vector<std::thread> workers;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (int w = 0; w < parallelism; ++w) {
    workers.emplace_back([&] {
      for (;;) {
        size_t i = cursor.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (failure) std::rethrow_exception(failure);
}

std::string team_result_string(const GameResult& r) {
  if (r.outcome == Outcome::Tie) return "tie";
  return r.winning_team == 0 ? "win" : "loss";
}

}  // namespace

EpisodeRecord run_episode(const std::array<Policy*, kNumAgents>& policies, uint64_t seed,
                          const MatchConfig& config) {
  GameState st = make_initial_state(seed, config);
  EpisodeRecord rec;
  rec.seed = seed;
  rec.config = config;
  for (int i = 0; i < kNumAgents; ++i) {
    policies[i]->begin_episode(i, config);
    rec.positions[i].push_back(st.agents[i].position);
  }

  std::array<Tracker, 2> trackers{Tracker(config.flame_ttl), Tracker(config.flame_ttl)};
  trackers[0].reset(observe(st, 0));
  trackers[1].reset(observe(st, 2));
  rec.rewards[0] = {};
  rec.rewards[2] = {};

  while (!st.result) {
    std::array<bool, kNumAgents> was_alive{};
    std::array<Action, kNumAgents> actions{};
    for (int i = 0; i < kNumAgents; ++i) {
      was_alive[i] = st.agents[i].alive;
      actions[i] = was_alive[i] ? policies[i]->act(observe(st, i)) : Action::Stop;
    }
    step(st, actions);
    rec.actions.push_back(actions);
    for (int i = 0; i < kNumAgents; ++i)
      if (st.agents[i].alive) rec.positions[i].push_back(st.agents[i].position);
    for (int t = 0; t < 2; ++t) {
      int id = t * 2;
      if (!was_alive[id]) continue;
      double T = trackers[t].update(observe(st, id), actions[id]);
      auto& r = rec.rewards[id];
      r.T.push_back(T);
      r.total.push_back(Tracker::compose(0, 0, T, false, config.reward_shaping_enabled));
    }
  }

  rec.result = st.result;
  for (int t = 0; t < 2; ++t) {
    int id = t * 2;
    auto& r = rec.rewards[id];
    auto [E, K] = trackers[t].terminal_rewards(*st.result, st.agents[id].alive, config.tie_reward);
    r.E = E;
    r.K = K;
    if (!r.total.empty()) {
      double last_T = r.T.back();
      r.total.back() = Tracker::compose(E, K, last_T, true, config.reward_shaping_enabled);
    }
  }
  std::string res = team_result_string(*st.result);
  std::string opp_res = res == "win" ? "loss" : res == "loss" ? "win" : "tie";
  for (int i = 0; i < kNumAgents; ++i) policies[i]->end_episode(i % 2 == 0 ? res : opp_res);
  return rec;
}

std::string EvalReport::to_csv() const {
  std::ostringstream out;
  out << "opponent,games,wins,losses,ties,win_ratio,loss_ratio,tie_ratio\n";
  for (const auto& r : rows) {
    out << opponent_acronym(r.opponent) << "," << r.games << "," << r.wins << "," << r.losses
        << "," << r.ties << "," << r.win_ratio() << "," << r.loss_ratio() << "," << r.tie_ratio()
        << "\n";
  }
  return out.str();
}

ordered_json EvalReport::to_json() const {
  ordered_json rows_json = ordered_json::array();
  for (const auto& r : rows) {
    rows_json.push_back(ordered_json{{"opponent", opponent_acronym(r.opponent)},
                                     {"games", r.games},
                                     {"wins", r.wins},
                                     {"losses", r.losses},
                                     {"ties", r.ties},
                                     {"win_ratio", r.win_ratio()},
                                     {"loss_ratio", r.loss_ratio()},
                                     {"tie_ratio", r.tie_ratio()}});
  }
  return ordered_json{{"rows", rows_json}};
}

EvalReport run_tournament(const PolicySpec& team, const std::vector<OpponentKind>& opponents,
                          int games_per_opponent, uint64_t base_seed, const MatchConfig& config,
                          int parallelism, const std::function<void(const EpisodeRecord&)>& sink) {
  size_t total = opponents.size() * static_cast<size_t>(games_per_opponent);
  std::vector<std::optional<EpisodeRecord>> records(total);
  parallel_for(total, parallelism, [&](size_t idx) {
    OpponentKind opp = opponents[idx / games_per_opponent];
    uint64_t seed = mix_seed(base_seed, idx + 1);
    auto a0 = instantiate(team, mix_seed(seed, 100));
    auto a2 = instantiate(team, mix_seed(seed, 102));
    PolicySpec opp_spec{opp, team.ext_command, team.move_budget_ms};
    auto a1 = instantiate(opp_spec, mix_seed(seed, 101));
    auto a3 = instantiate(opp_spec, mix_seed(seed, 103));
    EpisodeRecord rec =
        run_episode({a0.get(), a1.get(), a2.get(), a3.get()}, seed, config);
    rec.episode_id = idx;
    rec.team_kind = opponent_acronym(team.kind);
    rec.opponent_kind = opponent_acronym(opp);
    records[idx] = std::move(rec);
  });

  EvalReport report;
  for (size_t o = 0; o < opponents.size(); ++o) {
    EvalRow row;
    row.opponent = opponents[o];
    for (int g = 0; g < games_per_opponent; ++g) {
      const EpisodeRecord& rec = *records[o * games_per_opponent + g];
      row.games++;
      if (rec.result->outcome == Outcome::Tie)
        row.ties++;
      else if (rec.result->winning_team == 0)
        row.wins++;
      else
        row.losses++;
      if (sink) sink(rec);
    }
    report.rows.push_back(row);
  }
  return report;
}

CurriculumRunResult run_curriculum(const CurriculumSchedule& schedule, const PolicySpec& team,
                                   uint64_t base_seed, const MatchConfig& config, int parallelism,
                                   long max_games, std::ostream* training_log,
                                   const std::function<void(const EpisodeRecord&)>& sink) {
  if (auto violation = validate(schedule))
    throw std::invalid_argument("invalid schedule: " + *violation);
  if (parallelism < 1) parallelism = 1;

  CurriculumRunResult result;
  {
    ScheduleCursor counter(schedule, base_seed);
    while (!counter.exhausted()) result.target[counter.next().kind]++;
  }

  long budget = schedule.total_games();
  if (max_games > 0 && max_games < budget) budget = max_games;

  if (training_log)
    *training_log
        << "episode_id,phase,opponent,value_only,result,game_length,agent_id,E,K,sum_T,total\n";

  ScheduleCursor cursor(schedule, base_seed);
  long done = 0;
  while (done < budget) {
    // the whole block is reserved atomically from the schedule cursor
    long block = std::min<long>(parallelism, budget - done);
    std::vector<ScheduleCursor::Draw> draws;
    for (long i = 0; i < block; ++i) draws.push_back(cursor.next());

    std::vector<std::optional<EpisodeRecord>> records(block);
    parallel_for(static_cast<size_t>(block), parallelism, [&](size_t i) {
      long episode_id = done + static_cast<long>(i);
      uint64_t seed = mix_seed(base_seed, static_cast<uint64_t>(episode_id) + 1);
      auto a0 = instantiate(team, mix_seed(seed, 100));
      auto a2 = instantiate(team, mix_seed(seed, 102));
      PolicySpec opp_spec{draws[i].kind, team.ext_command, team.move_budget_ms};
      auto a1 = instantiate(opp_spec, mix_seed(seed, 101));
      auto a3 = instantiate(opp_spec, mix_seed(seed, 103));
      EpisodeRecord rec = run_episode({a0.get(), a1.get(), a2.get(), a3.get()}, seed, config);
      rec.episode_id = static_cast<uint64_t>(episode_id);
      rec.team_kind = opponent_acronym(team.kind);
      rec.opponent_kind = opponent_acronym(draws[i].kind);
      records[i] = std::move(rec);
    });

    for (long i = 0; i < block; ++i) {
      const EpisodeRecord& rec = *records[i];
      result.tallies[draws[i].kind]++;
      if (training_log) {
        for (const auto& [agent_id, r] : rec.rewards) {
          double sum_t = 0;
          for (double t : r.T) sum_t += t;
          double total = 0;
          for (double v : r.total) total += v;
          *training_log << rec.episode_id << "," << draws[i].phase << ","
                        << opponent_acronym(draws[i].kind) << "," << (draws[i].value_only ? 1 : 0)
                        << "," << team_result_string(*rec.result) << "," << rec.actions.size()
                        << "," << agent_id << "," << r.E << "," << r.K << "," << sum_t << ","
                        << total << "\n";
        }
      }
      if (sink) sink(rec);
    }
    done += block;
  }
  result.episodes = done;
  return result;
}

MatchConfig ablation_config(int ammo, int blast, MatchConfig base) {
  base.initial_ammo_team0 = ammo;
  base.initial_blast_team0 = blast;
  return base;
}

void write_reward_log(const EpisodeRecord& rec, std::ostream& out, bool header) {
  if (header) out << "episode_id,agent_id,step,T,E,K,total\n";
  for (const auto& [agent_id, r] : rec.rewards) {
    for (size_t t = 0; t < r.T.size(); ++t) {
      bool terminal = t + 1 == r.T.size();
      out << rec.episode_id << "," << agent_id << "," << t + 1 << "," << r.T[t] << ","
          << (terminal ? r.E : 0.0) << "," << (terminal ? r.K : 0.0) << "," << r.total[t] << "\n";
    }
  }
}

void export_trajectories(const std::vector<EpisodeRecord>& records, std::ostream& out,
                         ExportFormat format) {
  if (format == ExportFormat::Csv) out << "episode_id,agent_id,step,action,obs\n";
  for (const EpisodeRecord& rec : records) {
    GameState st = make_initial_state(rec.seed, rec.config);
    for (size_t t = 0; t < rec.actions.size(); ++t) {
      for (int id : {0, 2}) {
        if (!st.agents[id].alive) continue;
        ordered_json obs = observation_to_json(observe(st, id));
        int action = static_cast<int>(rec.actions[t][id]);
        if (format == ExportFormat::Jsonl) {
          out << ordered_json{{"episode_id", rec.episode_id},
                              {"agent_id", id},
                              {"step", t},
                              {"action", action},
                              {"obs", obs}}
                     .dump()
              << "\n";
        } else {
          std::string dumped = obs.dump();
          std::string quoted = "\"";
          for (char c : dumped) {
            if (c == '"') quoted += "\"\"";
            else quoted += c;
          }
          quoted += "\"";
          out << rec.episode_id << "," << id << "," << t << "," << action << "," << quoted
              << "\n";
        }
      }
      step(st, rec.actions[t]);
    }
  }
}

}  // namespace pommer
