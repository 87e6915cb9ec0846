#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pommer/analysis.hpp"
#include "pommer/engine.hpp"
#include "pommer/harness.hpp"
#include "pommer/json_io.hpp"

namespace fs = std::filesystem;
using namespace pommer;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitConfig = 3;
constexpr int kExitRuntime = 4;

struct CommonOpts {
  uint64_t seed = 1;
  std::string config_path;
  std::string out_dir = ".";
};

MatchConfig load_config(const std::string& path) {
  if (path.empty()) return {};
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return config_from_json(ordered_json::parse(in));
}

void apply_env_overrides(CommonOpts& opts, bool seed_given, bool out_given) {
  if (!out_given)
    if (const char* dir = std::getenv("POMMER_OUT_DIR")) opts.out_dir = dir;
  if (!seed_given)
    if (const char* seed = std::getenv("POMMER_SEED")) opts.seed = std::stoull(seed);
}

// Written before any episode runs; enough to reproduce the run exactly.
void write_manifest(const CommonOpts& opts, const std::string& command,
                    const ordered_json& extra) {
  fs::create_directories(opts.out_dir);
  ordered_json manifest{{"command", command},
                        {"config_path", opts.config_path},
                        {"base_seed", opts.seed},
                        {"out_dir", opts.out_dir},
                        {"engine_version", kEngineVersion}};
  manifest["timestamp"] = static_cast<long>(
      std::chrono::duration_cast<std::chrono::seconds>(
          std::chrono::system_clock::now().time_since_epoch())
          .count());
  for (const auto& [k, v] : extra.items()) manifest[k] = v;
  std::ofstream out(fs::path(opts.out_dir) / "manifest.json");
  out << manifest.dump(2) << "\n";
}

void print_rewards(const EpisodeRecord& rec) {
  for (const auto& [id, r] : rec.rewards) {
    double sum_t = 0, total = 0;
    for (double t : r.T) sum_t += t;
    for (double v : r.total) total += v;
    std::cout << "agent " << id << ": E=" << r.E << " K=" << r.K << " sum_T=" << sum_t
              << " total=" << total << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pommerman team environment: play, evaluate, train-rollout, analyze"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string team_str = "SS", opponent_str = "ST", preset_name = "agent0";
  std::string record_path, ext_command, format_str = "jsonl";
  std::vector<std::string> record_paths;
  int games_per_opponent = 500, parallelism = 1, budget_ms = 100;
  long max_games = 0;
  bool seed_given = false, out_given = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", opts.seed, "base seed")->each([&](const std::string&) {
      seed_given = true;
    });
    cmd->add_option("--config", opts.config_path, "match config JSON file");
    cmd->add_option("--out", opts.out_dir, "output directory")->each([&](const std::string&) {
      out_given = true;
    });
  };

  auto* play = app.add_subcommand("play", "run one episode and print the result");
  play->add_option("--team", team_str, "team policy kind (ST, SS, SS-NB, EXT)");
  play->add_option("--opponent", opponent_str, "opponent kind (ST, SS, SS-NB, EXT)");
  play->add_option("--record", record_path, "write the episode record here");
  play->add_option("--ext-command", ext_command, "external policy command for EXT");
  add_common(play);

  auto* tournament = app.add_subcommand("tournament", "evaluate a team against each opponent");
  tournament->add_option("--team", team_str, "team policy kind");
  tournament->add_option("--games-per-opponent", games_per_opponent, "games per opponent kind");
  tournament->add_option("--parallel", parallelism, "worker lanes");
  tournament->add_option("--ext-command", ext_command, "external policy command for EXT");
  add_common(tournament);

  auto* curriculum = app.add_subcommand("curriculum", "simulate a training curriculum");
  curriculum->add_option("--preset", preset_name, "agent0|agent20|agent40|agent60|focus|incrm");
  curriculum->add_option("--team", team_str, "team policy slot (scripted kind or EXT)");
  curriculum->add_option("--parallel", parallelism, "parallel games per block")->default_val(64);
  curriculum->add_option("--max-games", max_games, "truncate the run (0 = full budget)");
  curriculum->add_option("--ext-command", ext_command, "external policy command for EXT");
  curriculum->add_option("--move-budget-ms", budget_ms, "per-move budget for EXT");
  add_common(curriculum);

  auto* replay_cmd = app.add_subcommand("replay", "verify a record replays bit-identically");
  replay_cmd->add_option("records", record_paths, "record files")->required();
  add_common(replay_cmd);

  auto* jitter_cmd = app.add_subcommand("jitter", "jitter/dormancy analysis over records");
  jitter_cmd->add_option("records", record_paths, "record files")->required();
  add_common(jitter_cmd);

  auto* export_cmd = app.add_subcommand("export", "export (observation, action) training pairs");
  export_cmd->add_option("records", record_paths, "record files");
  export_cmd->add_option("--format", format_str, "jsonl or csv");
  add_common(export_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    apply_env_overrides(opts, seed_given, out_given);
    MatchConfig config;
    try {
      config = load_config(opts.config_path);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }

    if (play->parsed()) {
      PolicySpec team{opponent_from_string(team_str), ext_command, budget_ms};
      OpponentKind opp = opponent_from_string(opponent_str);
      write_manifest(opts, "play",
                     {{"team", team_str}, {"opponent", opponent_str}});
      auto a0 = make_policy(team.kind, mix_seed(opts.seed, 100), team.ext_command, budget_ms);
      auto a2 = make_policy(team.kind, mix_seed(opts.seed, 102), team.ext_command, budget_ms);
      auto a1 = make_policy(opp, mix_seed(opts.seed, 101), ext_command, budget_ms);
      auto a3 = make_policy(opp, mix_seed(opts.seed, 103), ext_command, budget_ms);
      EpisodeRecord rec =
          run_episode({a0.get(), a1.get(), a2.get(), a3.get()}, opts.seed, config);
      rec.team_kind = opponent_acronym(team.kind);
      rec.opponent_kind = opponent_acronym(opp);
      std::cout << "result: " << result_to_string(*rec.result) << " after "
                << rec.actions.size() << " steps\n";
      print_rewards(rec);
      if (!record_path.empty()) {
        write_record_file(rec, record_path);
        std::cout << "record written to " << record_path << "\n";
      }
      return 0;
    }

    if (tournament->parsed()) {
      PolicySpec team{opponent_from_string(team_str), ext_command, budget_ms};
      write_manifest(opts, "tournament",
                     {{"team", team_str}, {"games_per_opponent", games_per_opponent},
                      {"parallel", parallelism}});
      std::vector<OpponentKind> opponents = {OpponentKind::ST, OpponentKind::SS,
                                             OpponentKind::SS_NB, OpponentKind::EXT};
      EvalReport report = run_tournament(team, opponents, games_per_opponent, opts.seed, config,
                                         parallelism);
      std::ofstream csv(fs::path(opts.out_dir) / "eval_report.csv");
      csv << report.to_csv();
      std::ofstream js(fs::path(opts.out_dir) / "eval_report.json");
      js << report.to_json().dump(2) << "\n";
      std::cout << report.to_csv();
      return 0;
    }

    if (curriculum->parsed()) {
      CurriculumSchedule schedule = preset(preset_name);
      PolicySpec team{opponent_from_string(team_str), ext_command, budget_ms};
      write_manifest(opts, "curriculum",
                     {{"preset", preset_name}, {"team", team_str}, {"parallel", parallelism},
                      {"max_games", max_games}});
      std::ofstream sched_out(fs::path(opts.out_dir) / "schedule.json");
      sched_out << schedule_to_json(schedule).dump(2) << "\n";
      std::ofstream log(fs::path(opts.out_dir) / "training_log.csv");
      CurriculumRunResult result = run_curriculum(schedule, team, opts.seed, config, parallelism,
                                                  max_games, &log);
      std::cout << "episodes: " << result.episodes << "\n";
      std::cout << "opponent,games,target\n";
      for (const auto& [kind, target] : result.target) {
        long got = result.tallies.count(kind) ? result.tallies.at(kind) : 0;
        std::cout << opponent_acronym(kind) << "," << got << "," << target << "\n";
      }
      return 0;
    }

    if (replay_cmd->parsed()) {
      for (const auto& path : record_paths) {
        EpisodeRecord rec = read_record_file(path);
        ReplayOutcome out = replay(rec);
        bool result_ok = rec.result.has_value() == out.final_state.result.has_value() &&
                         (!rec.result || *rec.result == *out.final_state.result);
        std::cout << path << ": " << (result_ok ? "verified" : "MISMATCH") << " hash="
                  << std::hex << state_hash(out.final_state) << std::dec << "\n";
        if (!result_ok) return kExitRuntime;
      }
      return 0;
    }

    if (jitter_cmd->parsed()) {
      std::vector<std::vector<double>> per_game;
      for (const auto& path : record_paths) {
        EpisodeRecord rec = read_record_file(path);
        ReplayOutcome out = replay(rec);
        for (int id : {0, 2})
          if (!out.positions[id].empty()) per_game.push_back(jitter_bins(out.positions[id]));
      }
      std::vector<double> bins = average_bins(per_game);
      fs::create_directories(opts.out_dir);
      std::ofstream csv(fs::path(opts.out_dir) / "jitter.csv");
      csv << "bin_start,fraction\n";
      for (size_t i = 0; i < bins.size(); ++i) csv << i * 50 << "," << bins[i] << "\n";
      std::cout << "jitter bins: " << bins.size() << " written to "
                << (fs::path(opts.out_dir) / "jitter.csv").string() << "\n";
      return 0;
    }

    if (export_cmd->parsed()) {
      ExportFormat format;
      if (format_str == "jsonl")
        format = ExportFormat::Jsonl;
      else if (format_str == "csv")
        format = ExportFormat::Csv;
      else {
        std::cerr << "unknown export format '" << format_str << "' (jsonl or csv)\n";
        return kExitUsage;
      }
      std::vector<EpisodeRecord> records;
      for (const auto& path : record_paths) records.push_back(read_record_file(path));
      fs::create_directories(opts.out_dir);
      std::string name = format == ExportFormat::Jsonl ? "dataset.jsonl" : "dataset.csv";
      std::ofstream out(fs::path(opts.out_dir) / name);
      export_trajectories(records, out, format);
      std::cout << "dataset written to " << (fs::path(opts.out_dir) / name).string() << "\n";
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return 0;
}
