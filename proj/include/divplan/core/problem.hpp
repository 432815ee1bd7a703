#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "divplan/error.hpp"

namespace divplan::core {

using FluentId = std::uint32_t;
using ActionId = std::uint32_t;

// A ground atom. Identifiers are lower-cased on construction so that two
// fluents compare equal iff their canonical strings do.
struct Fluent {
  std::string name;
  std::vector<std::string> args;

  Fluent() = default;
  Fluent(std::string_view name, std::vector<std::string> args = {});

  // "name(a,b)" or "name" for nullary fluents.
  std::string canonical() const;

  // Inverse of canonical(); also accepts the PDDL form "(name a b)".
  static Fluent parse(std::string_view text);

  friend bool operator==(const Fluent&, const Fluent&) = default;
  friend auto operator<=>(const Fluent&, const Fluent&) = default;
};

std::string normalise_identifier(std::string_view id);

// Closed-world state: a bitset over the problem's fluent universe.
class State {
 public:
  State() = default;
  explicit State(std::size_t universe_size);

  bool test(FluentId f) const;
  void set(FluentId f, bool value = true);
  std::size_t universe_size() const { return size_; }
  std::vector<FluentId> true_fluents() const;
  std::size_t count() const;

  friend bool operator==(const State&, const State&) = default;

  std::size_t hash() const;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

struct GroundAction {
  std::string name;  // canonical, e.g. "move(aladdin,palace,market)"
  std::vector<FluentId> pre_pos;
  std::vector<FluentId> pre_neg;
  std::vector<FluentId> add;
  std::vector<FluentId> del;
  double cost = 1.0;
};

struct Literal {
  FluentId fluent = 0;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Goal in disjunctive normal form. A single empty conjunction is the
// trivially-true goal; an empty disjunct list is unsatisfiable.
struct GoalFormula {
  std::vector<std::vector<Literal>> disjuncts;

  static GoalFormula trivially_true() { return GoalFormula{{{}}}; }

  bool holds(const State& s) const;
  bool is_trivial() const;
  // gnd(G): every fluent mentioned by the goal, sorted and unique.
  std::vector<FluentId> fluents() const;

  friend bool operator==(const GoalFormula&, const GoalFormula&) = default;
};

class GroundProblem {
 public:
  GroundProblem() = default;
  // Validates the invariants: add and del disjoint, non-negative costs,
  // init and goal drawn from the fluent universe, unique names.
  GroundProblem(std::vector<Fluent> fluents, std::vector<GroundAction> actions,
                State init, GoalFormula goal,
                std::optional<int> budget = std::nullopt);

  const std::vector<Fluent>& fluents() const { return fluents_; }
  const std::vector<GroundAction>& actions() const { return actions_; }
  const State& init() const { return init_; }
  const GoalFormula& goal() const { return goal_; }
  std::optional<int> budget() const { return budget_; }

  const GroundAction& action(ActionId id) const { return actions_.at(id); }
  const Fluent& fluent(FluentId id) const { return fluents_.at(id); }
  std::string fluent_name(FluentId id) const { return fluents_.at(id).canonical(); }

  std::optional<FluentId> find_fluent(std::string_view canonical) const;
  std::optional<ActionId> find_action(std::string_view name) const;

  State make_state(const std::vector<FluentId>& true_fluents) const;

 private:
  std::vector<Fluent> fluents_;
  std::vector<GroundAction> actions_;
  State init_;
  GoalFormula goal_;
  std::optional<int> budget_;
  std::unordered_map<std::string, FluentId> fluent_index_;
  std::unordered_map<std::string, ActionId> action_index_;
};

struct Plan {
  std::vector<ActionId> actions;

  std::size_t size() const { return actions.size(); }
  bool empty() const { return actions.empty(); }

  friend bool operator==(const Plan&, const Plan&) = default;
  friend auto operator<=>(const Plan&, const Plan&) = default;
};

// A plan together with the states it visits; states.front() is the initial
// state and states.size() == plan.size() + 1.
struct PlanTrace {
  Plan plan;
  std::vector<State> states;

  const State& final_state() const { return states.back(); }

  friend bool operator==(const PlanTrace&, const PlanTrace&) = default;
};

class PlanError : public Error {
 public:
  using Error::Error;
};

class InapplicableAction : public PlanError {
 public:
  InapplicableAction(std::size_t index, const std::string& action);
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

class GoalNotSatisfied : public PlanError {
 public:
  GoalNotSatisfied() : PlanError("final state does not satisfy the goal") {}
};

class BudgetExceeded : public PlanError {
 public:
  BudgetExceeded(std::size_t length, int budget);
};

class ProblemError : public Error {
 public:
  using Error::Error;
};

bool applicable(const State& state, const GroundAction& action);

// Successor state; throws InapplicableAction (index 0) if a precondition
// does not hold.
State apply(const State& state, const GroundAction& action);

// Executes the plan from init and returns the induced trace, or throws the
// first violation found.
PlanTrace validate_plan(const GroundProblem& problem, const Plan& plan);

double plan_cost(const GroundProblem& problem, const Plan& plan);

// Every valid plan of length <= max_len, ordered by length and then
// lexicographically by action id. Exponential; intended as a test oracle
// for small instances (max_len <= 8).
std::vector<Plan> enumerate_plans(const GroundProblem& problem, int max_len);

std::vector<std::string> action_names(const GroundProblem& problem, const Plan& plan);

}  // namespace divplan::core
