#include "divplan/domains/platformer.hpp"

#include <sstream>

namespace divplan::domains::platformer {

Level Level::parse(const std::string& text) {
  Level lv;
  std::istringstream in(text);
  std::string line;
  bool s = false, e = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!lv.rows_.empty() && line.size() != lv.rows_.front().size())
      throw Error("level rows have different lengths");
    int y = static_cast<int>(lv.rows_.size());
    for (int x = 0; x < static_cast<int>(line.size()); ++x) {
      char c = line[x];
      if (c == 'S') {
        if (s) throw Error("level has two avatar starts");
        s = true, lv.sx_ = x, lv.sy_ = y, line[x] = '.';
      } else if (c == 'E') {
        if (e) throw Error("level has two enemies");
        e = true, lv.ex_ = x, lv.ey_ = y, line[x] = '.';
      } else if (c != '#' && c != '.') {
        throw Error(std::string("unknown level character '") + c + "'");
      }
    }
    lv.rows_.push_back(line);
  }
  if (lv.rows_.empty()) throw Error("empty level");
  if (!s || !e) throw Error("level needs one 'S' and one 'E'");
  lv.height_ = static_cast<int>(lv.rows_.size());
  lv.width_ = static_cast<int>(lv.rows_.front().size());
  return lv;
}

bool Level::solid(int x, int y) const {
  if (x < 0 || y < 0 || x >= width_ || y >= height_) return true;
  return rows_[y][x] == '#';
}

std::string Level::row(int y) const { return rows_.at(y); }

const char* move_name(Move m) {
  switch (m) {
    case Move::Left: return "left";
    case Move::Right: return "right";
    case Move::Jump: return "jump";
    case Move::Noop: return "noop";
  }
  return "?";
}

std::optional<Move> parse_move(const std::string& name) {
  for (auto m : {Move::Left, Move::Right, Move::Jump, Move::Noop})
    if (name == move_name(m)) return m;
  return std::nullopt;
}

PlatformerState initial_state(const Level& level) {
  PlatformerState s;
  s.x = level.start_x();
  s.y = level.start_y();
  s.enemy_x = level.enemy_x();
  return s;
}

PlatformerState platformer_step(const Level& level, const PlatformerState& s, Move m) {
  PlatformerState n = s;
  ++n.tick;
  int dx = m == Move::Left ? -1 : m == Move::Right ? 1 : 0;
  if (dx != 0 && !level.solid(n.x + dx, n.y)) n.x += dx;

  bool grounded = level.solid(n.x, n.y + 1);
  bool fell = false;
  if (m == Move::Jump && grounded && n.vy == 0) n.vy = kJumpHeight;
  if (n.vy > 0) {
    if (level.solid(n.x, n.y - 1))
      n.vy = 0;
    else
      --n.y, --n.vy;
  } else if (!grounded) {
    ++n.y;
    fell = true;
  }

  const int ey = level.enemy_y();
  if (n.enemy_alive && n.x == n.enemy_x && n.y == ey) {
    if (!fell) throw AvatarDied("ran into the enemy");
    n.enemy_alive = false;
  }
  if (n.enemy_alive) {
    // Patrol: turn at walls and ledges.
    int nx = n.enemy_x + n.enemy_dir;
    if (level.solid(nx, ey) || !level.solid(nx, ey + 1)) {
      n.enemy_dir = -n.enemy_dir;
      nx = n.enemy_x + n.enemy_dir;
      if (level.solid(nx, ey) || !level.solid(nx, ey + 1)) nx = n.enemy_x;
    }
    n.enemy_x = nx;
    if (n.x == n.enemy_x && n.y == ey) throw AvatarDied("the enemy walked into the avatar");
  }
  return n;
}

PlatformerSimulator::PlatformerSimulator(Level level, int budget)
    : level_(std::move(level)), budget_(budget), alphabet_({"killed", "avoided"}) {
  if (budget < 1) throw Error("platformer budget must be positive");
}

std::vector<Move> PlatformerSimulator::legal_actions(const PlatformerState&) const {
  return {Move::Left, Move::Right, Move::Jump, Move::Noop};
}

std::optional<PlatformerState> PlatformerSimulator::step(const PlatformerState& s, Move m) const {
  try {
    return platformer_step(level_, s, m);
  } catch (const AvatarDied&) {
    return std::nullopt;
  }
}

ltl::Valuation PlatformerSimulator::propositions(const PlatformerState& s) const {
  return {!s.enemy_alive, s.enemy_alive};
}

std::string PlatformerSimulator::state_key(const PlatformerState& s) const {
  // The tick is left out: physics does not depend on it.
  return std::to_string(s.x) + ',' + std::to_string(s.y) + ',' + std::to_string(s.vy) + ',' +
         std::to_string(s.enemy_x) + ',' + std::to_string(s.enemy_dir) + ',' + (s.enemy_alive ? '1' : '0');
}

bspace::BehaviourSpace<PlatformerTrace> standard_space(const PlatformerSimulator& sim) {
  auto f = bspace::ltl_feature<PlatformerTrace>(
      "enemy-engagement", {{"killed", ltl::parse("FG killed")}, {"avoided", ltl::parse("G avoided")}},
      sim.alphabet(), [](const PlatformerTrace& t) -> const ltl::PropTrace& { return t.props; });
  return bspace::BehaviourSpace<PlatformerTrace>({std::move(f)});
}

std::string render_path(const Level& level, const std::vector<PlatformerState>& states) {
  std::vector<std::string> rows;
  for (int y = 0; y < level.height(); ++y) rows.push_back(level.row(y));
  for (const auto& s : states)
    if (s.y >= 0 && s.y < level.height() && s.x >= 0 && s.x < level.width()) rows[s.y][s.x] = '*';
  rows[level.enemy_y()][level.enemy_x()] = 'E';
  rows[level.start_y()][level.start_x()] = 'S';
  std::string out;
  for (const auto& r : rows) out += r + '\n';
  return out;
}

}  // namespace divplan::domains::platformer
