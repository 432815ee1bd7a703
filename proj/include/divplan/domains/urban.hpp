#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "divplan/bspace/behaviour_space.hpp"
#include "divplan/ltl/formula.hpp"
#include "divplan/search/search.hpp"

namespace divplan::domains::urban {

enum class LandUse : char {
  Residential = 'R',
  Office = 'O',
  Green = 'G',
  Commercial = 'C',
  Facility = 'F',
  Empty = '.',
};

inline constexpr LandUse kUsedTypes[] = {LandUse::Residential, LandUse::Office, LandUse::Green,
                                         LandUse::Commercial, LandUse::Facility};

LandUse land_use_from_letter(char c);
const char* land_use_name(LandUse u);
LandUse land_use_from_name(const std::string& name);

class EmptyGrid : public Error {
 public:
  using Error::Error;
};

class UrbanGrid {
 public:
  UrbanGrid() = default;
  UrbanGrid(int width, int height, std::vector<LandUse> cells, int counter = 0);
  // One string of land-use letters per row.
  static UrbanGrid from_rows(const std::vector<std::string>& rows);

  int width() const { return width_; }
  int height() const { return height_; }
  int counter() const { return counter_; }
  const std::vector<LandUse>& cells() const { return cells_; }
  LandUse at(int row, int col) const { return cells_[row * width_ + col]; }
  int count(LandUse u) const;
  std::vector<std::string> rows() const;

  friend bool operator==(const UrbanGrid&, const UrbanGrid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<LandUse> cells_;
  int counter_ = 0;
};

// 100 * (green + commercial + facility) / non-empty cells.
double sustainability_score(const UrbanGrid& g);
// Shannon-Weaver entropy of the five used types over non-empty cells,
// scaled by 100 / ln 5.
double diversity_score(const UrbanGrid& g);

struct ConversionRule {
  LandUse source;
  int percent = 5;  // of the source cells, rounded up
  std::vector<LandUse> targets;
};

struct RuleSet {
  std::vector<ConversionRule> rules;

  const ConversionRule& rule_for(LandUse source) const;
  static RuleSet standard();
};

// Converts ceil(percent% of the source cells), taken in row-major order,
// splitting them evenly over the targets in order; the first targets take
// the remainder. With no source cells nothing changes. The counter always
// advances.
UrbanGrid urban_step(const UrbanGrid& grid, LandUse source, const RuleSet& rules, int budget);

class BudgetExhausted : public Error {
 public:
  using Error::Error;
};

UrbanGrid grid_from_json(const nlohmann::json& j);
nlohmann::ordered_json grid_to_json(const UrbanGrid& g);

std::string render(const UrbanGrid& g, bool ansi);
std::string legend(bool ansi);

inline constexpr int kDefaultBudget = 10;

class UrbanSimulator {
 public:
  using State = UrbanGrid;
  using Action = LandUse;

  UrbanSimulator(UrbanGrid initial, RuleSet rules = RuleSet::standard(), int budget = kDefaultBudget,
                 bspace::BinTable bins = bspace::BinTable::standard());

  UrbanGrid initial() const { return initial_; }
  std::vector<LandUse> legal_actions(const UrbanGrid& g) const;
  std::optional<UrbanGrid> step(const UrbanGrid& g, LandUse a) const;
  ltl::Valuation propositions(const UrbanGrid& g) const;
  bool is_goal(const UrbanGrid& g) const { return g.counter() == budget_; }
  std::optional<int> budget() const { return budget_; }
  const ltl::Alphabet& alphabet() const { return alphabet_; }
  std::string state_key(const UrbanGrid& g) const;
  std::string action_name(LandUse a) const;
  std::optional<LandUse> parse_action(const std::string& name) const;

  const bspace::BinTable& bins() const { return bins_; }
  const RuleSet& rules() const { return rules_; }

  // Best-first guidance towards a cell of the standard urban space: distance
  // of each score to its target bin, or +infinity when the sustainability
  // bin is out of reach in the remaining steps (or the cell needs l-reached).
  std::function<double(const UrbanGrid&)> cell_heuristic(const bspace::Behaviour& cell) const;

 private:
  UrbanGrid initial_;
  RuleSet rules_;
  int budget_;
  bspace::BinTable bins_;
  ltl::Alphabet alphabet_;
};

using UrbanTrace = search::SimTrace<UrbanSimulator>;

// Features "sustainability" (suffix _S) and "diversity" (suffix _D).
bspace::BehaviourSpace<UrbanTrace> standard_space(const UrbanSimulator& sim);

}  // namespace divplan::domains::urban
