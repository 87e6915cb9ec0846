#include "pommer/curriculum.hpp"

#include <stdexcept>

#include "pommer/rng.hpp"

namespace pommer {

namespace {

const std::vector<OpponentKind> kAllKinds = {OpponentKind::ST, OpponentKind::SS,
                                             OpponentKind::SS_NB, OpponentKind::EXT};

PhaseSpec warmup_phase() {
  PhaseSpec w;
  for (OpponentKind k : kAllKinds) w.counts[k] = kWarmupGames / 4;
  w.value_only = true;
  return w;
}

PhaseSpec mixed(long st, long ss, long ssnb, long ext) {
  PhaseSpec p;
  if (st > 0) p.counts[OpponentKind::ST] = st;
  if (ss > 0) p.counts[OpponentKind::SS] = ss;
  if (ssnb > 0) p.counts[OpponentKind::SS_NB] = ssnb;
  if (ext > 0) p.counts[OpponentKind::EXT] = ext;
  return p;
}

}  // namespace

long PhaseSpec::total() const {
  long t = 0;
  for (const auto& [k, n] : counts) t += n;
  return t;
}

long CurriculumSchedule::total_games() const {
  long t = warmup.total();
  for (const auto& p : phases) t += p.total();
  return t;
}

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"agent0", "agent20", "agent40",
                                                 "agent60", "focus",   "incrm"};
  return names;
}

CurriculumSchedule preset(const std::string& name) {
  CurriculumSchedule s;
  s.name = name;
  s.warmup = warmup_phase();
  if (name == "agent0") {
    s.phases = {mixed(23750, 23750, 23750, 23750)};
  } else if (name == "agent20") {
    s.phases = {mixed(20000, 0, 0, 0), mixed(18750, 18750, 18750, 18750)};
  } else if (name == "agent40") {
    s.phases = {mixed(40000, 0, 0, 0), mixed(13750, 13750, 13750, 13750)};
  } else if (name == "agent60") {
    s.phases = {mixed(60000, 0, 0, 0), mixed(8750, 8750, 8750, 8750)};
  } else if (name == "focus") {
    s.phases = {mixed(23750, 0, 0, 0), mixed(0, 23750, 0, 0), mixed(0, 0, 23750, 0),
                mixed(0, 0, 0, 23750)};
  } else if (name == "incrm") {
    s.phases = {mixed(6000, 0, 0, 0), mixed(5800, 8000, 0, 0), mixed(6000, 8000, 11600, 0),
                mixed(6200, 7800, 11600, 24000)};
  } else {
    std::string known;
    for (const auto& n : preset_names()) known += (known.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown curriculum preset '" + name + "' (known: " + known + ")");
  }
  return s;
}

std::optional<std::string> validate(const CurriculumSchedule& s) {
  for (const auto& [k, n] : s.warmup.counts)
    if (n < 0) return "warmup has a negative count for " + std::string(opponent_key(k));
  if (s.warmup.total() != kWarmupGames)
    return "warmup must total " + std::to_string(kWarmupGames) + " games, got " +
           std::to_string(s.warmup.total());
  if (!s.warmup.value_only) return "warmup phase must be value_only";
  long sum = 0;
  for (size_t i = 0; i < s.phases.size(); ++i) {
    const PhaseSpec& p = s.phases[i];
    bool positive = false;
    for (const auto& [k, n] : p.counts) {
      if (n < 0)
        return "phase " + std::to_string(i) + " has a negative count for " +
               std::string(opponent_key(k));
      if (n > 0) positive = true;
    }
    if (!positive) return "phase " + std::to_string(i) + " has no games";
    sum += p.total();
  }
  if (sum != kTrainingGames)
    return "budget mismatch: phases sum to " + std::to_string(sum) + ", expected " +
           std::to_string(kTrainingGames);
  return std::nullopt;
}

ScheduleCursor::ScheduleCursor(const CurriculumSchedule& schedule, uint64_t seed)
    : schedule_(schedule), seed_(seed) {
  remaining_ = schedule_.warmup.counts;
}

void ScheduleCursor::load_phase() {
  while (true) {
    long left = 0;
    for (const auto& [k, n] : remaining_) left += n;
    if (left > 0) return;
    phase_index_++;
    if (phase_index_ >= static_cast<int>(schedule_.phases.size())) return;  // exhausted
    remaining_ = schedule_.phases[phase_index_].counts;
  }
}

bool ScheduleCursor::exhausted() const { return position_ >= schedule_.total_games(); }

ScheduleCursor::Draw ScheduleCursor::next() {
  if (exhausted()) throw std::out_of_range("curriculum budget exhausted");
  load_phase();
  OpponentKind best = OpponentKind::ST;
  long best_count = -1;
  uint64_t best_tie = 0;
  for (const auto& [k, n] : remaining_) {
    if (n <= 0) continue;
    uint64_t tie = mix_seed(seed_, (static_cast<uint64_t>(position_) << 8) |
                                       static_cast<uint64_t>(k));
    if (n > best_count || (n == best_count && tie < best_tie)) {
      best = k;
      best_count = n;
      best_tie = tie;
    }
  }
  remaining_[best]--;
  Draw d;
  d.kind = best;
  d.phase = phase_index_;
  d.value_only = phase_index_ < 0 ? schedule_.warmup.value_only
                                  : schedule_.phases[phase_index_].value_only;
  position_++;
  return d;
}

ScheduleCursor::Draw next_opponent(const CurriculumSchedule& schedule, long games_played,
                                   uint64_t seed) {
  if (games_played >= schedule.total_games())
    throw std::out_of_range("curriculum budget exhausted");
  ScheduleCursor cursor(schedule, seed);
  for (long i = 0; i < games_played; ++i) cursor.next();
  return cursor.next();
}

ordered_json schedule_to_json(const CurriculumSchedule& s) {
  auto phase_json = [](const PhaseSpec& p) {
    ordered_json counts = ordered_json::object();
    for (const auto& [k, n] : p.counts) counts[opponent_key(k)] = n;
    return ordered_json{{"counts", counts}, {"value_only", p.value_only}};
  };
  ordered_json phases = ordered_json::array();
  for (const auto& p : s.phases) phases.push_back(phase_json(p));
  return ordered_json{{"name", s.name}, {"warmup", phase_json(s.warmup)}, {"phases", phases}};
}

CurriculumSchedule schedule_from_json(const ordered_json& j) {
  auto phase_from = [](const ordered_json& pj) {
    PhaseSpec p;
    for (const auto& [key, val] : pj.at("counts").items())
      p.counts[opponent_from_string(key)] = val.get<long>();
    p.value_only = pj.value("value_only", false);
    return p;
  };
  CurriculumSchedule s;
  s.name = j.value("name", "");
  s.warmup = phase_from(j.at("warmup"));
  for (const auto& pj : j.at("phases")) s.phases.push_back(phase_from(pj));
  return s;
}

}  // namespace pommer
