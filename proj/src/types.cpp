#include "pommer/types.hpp"

namespace pommer {

const char* action_name(Action a) {
  switch (a) {
    case Action::Stop: return "Stop";
    case Action::Up: return "Up";
    case Action::Left: return "Left";
    case Action::Down: return "Down";
    case Action::Right: return "Right";
    case Action::Bomb: return "Bomb";
  }
  return "?";
}

const char* cell_kind_name(CellKind k) {
  switch (k) {
    case CellKind::Passage: return "Passage";
    case CellKind::Rigid: return "Rigid";
    case CellKind::Wood: return "Wood";
    case CellKind::PowerupExtraBomb: return "ExtraBomb";
    case CellKind::PowerupIncrRange: return "IncrRange";
    case CellKind::PowerupKick: return "Kick";
  }
  return "?";
}

std::string result_to_string(const GameResult& r) {
  std::string s;
  if (r.outcome == Outcome::Win) {
    s = "win:team" + std::to_string(r.winning_team);
  } else {
    s = "tie";
  }
  switch (r.cause) {
    case Cause::Elimination: s += ":elimination"; break;
    case Cause::Timeout: s += ":timeout"; break;
    case Cause::SimultaneousDeath: s += ":simultaneous"; break;
  }
  return s;
}

}  // namespace pommer
