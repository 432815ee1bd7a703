#pragma once

#include <optional>
#include <string>
#include <vector>

#include "divplan/bspace/behaviour_space.hpp"
#include "divplan/search/search.hpp"

namespace divplan::domains::platformer {

// Static geometry. Map legend: '#' solid, '.' air, 'S' avatar start,
// 'E' enemy start. Row 0 is the top.
class Level {
 public:
  static Level parse(const std::string& text);

  int width() const { return width_; }
  int height() const { return height_; }
  bool solid(int x, int y) const;  // outside the map counts as solid
  int start_x() const { return sx_; }
  int start_y() const { return sy_; }
  int enemy_x() const { return ex_; }
  int enemy_y() const { return ey_; }
  std::string row(int y) const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<std::string> rows_;
  int sx_ = 0, sy_ = 0, ex_ = 0, ey_ = 0;
};

struct PlatformerState {
  int x = 0;
  int y = 0;
  int vy = 0;  // remaining upward moves of the current jump
  int enemy_x = 0;
  int enemy_dir = -1;
  bool enemy_alive = true;
  int tick = 0;

  friend bool operator==(const PlatformerState&, const PlatformerState&) = default;
};

enum class Move { Left, Right, Jump, Noop };

const char* move_name(Move m);
std::optional<Move> parse_move(const std::string& name);

class AvatarDied : public Error {
 public:
  using Error::Error;
};

inline constexpr int kJumpHeight = 3;

// One tick: horizontal move, then jump/gravity, then the enemy patrols one
// cell. Falling onto the enemy kills it; any other contact throws
// AvatarDied.
PlatformerState platformer_step(const Level& level, const PlatformerState& s, Move m);

PlatformerState initial_state(const Level& level);

inline constexpr int kDefaultBudget = 40;

class PlatformerSimulator {
 public:
  using State = PlatformerState;
  using Action = Move;

  explicit PlatformerSimulator(Level level, int budget = kDefaultBudget);

  PlatformerState initial() const { return initial_state(level_); }
  std::vector<Move> legal_actions(const PlatformerState& s) const;
  std::optional<PlatformerState> step(const PlatformerState& s, Move m) const;
  ltl::Valuation propositions(const PlatformerState& s) const;
  bool is_goal(const PlatformerState& s) const { return s.x == level_.width() - 1; }
  std::optional<int> budget() const { return budget_; }
  const ltl::Alphabet& alphabet() const { return alphabet_; }
  std::string state_key(const PlatformerState& s) const;
  std::string action_name(Move m) const { return move_name(m); }

  const Level& level() const { return level_; }

 private:
  Level level_;
  int budget_;
  ltl::Alphabet alphabet_;
};

using PlatformerTrace = search::SimTrace<PlatformerSimulator>;

// "enemy-engagement" with values killed (FG killed) and avoided (G avoided).
bspace::BehaviourSpace<PlatformerTrace> standard_space(const PlatformerSimulator& sim);

// Level map with the avatar's visited cells marked '*'.
std::string render_path(const Level& level, const std::vector<PlatformerState>& states);

}  // namespace divplan::domains::platformer
