#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "divplan/core/problem.hpp"
#include "divplan/sat/solver.hpp"

namespace divplan::satplan {

// Bounded-horizon CNF for a ground problem. Variables are laid out as
//   fluent f at step t (0..n):    1 + t*F + f
//   action a at step t (0..n-1):  1 + (n+1)*F + t*A + a
// followed by auxiliary variables (goal disjunct selectors).
struct CnfTask {
  sat::Cnf cnf;
  int horizon = 0;
  std::size_t num_fluents = 0;
  std::size_t num_actions = 0;

  int fluent_var(core::FluentId f, int step) const;
  int action_var(core::ActionId a, int step) const;
  int first_aux_var() const;
};

class MalformedModel : public Error {
 public:
  using Error::Error;
};

class HorizonMismatch : public Error {
 public:
  using Error::Error;
};

// Sequential encoding: initial-state units, goal at the last step, exactly
// one action per step, preconditions, effects and explanatory frame axioms.
// Models correspond one-to-one with valid plans of length exactly `horizon`.
CnfTask encode(const core::GroundProblem& problem, int horizon);

// Reads the plan and state sequence off a model of `task`.
core::PlanTrace decode(const sat::Model& model, const CnfTask& task);

// Appends (and returns) the clause excluding models whose last-step values
// of the given fluents all equal the given assignment.
std::vector<int> forbid_behaviour(CnfTask& task,
                                  const std::vector<std::pair<core::FluentId, bool>>& assignment);

// Appends (and returns) the clause excluding this exact action sequence.
std::vector<int> forbid_plan(CnfTask& task, const core::Plan& plan);

struct SolveConfig {
  sat::SolverOptions solver;
  // Competition-style solver binary; empty means the built-in solver.
  std::string external_command;
};

std::optional<sat::Model> solve(const CnfTask& task, const SolveConfig& config = {},
                                sat::SolverStats* stats = nullptr);

// Sidecar describing which DIMACS variable stands for which fluent/action.
nlohmann::ordered_json varmap_json(const CnfTask& task, const core::GroundProblem& problem);

}  // namespace divplan::satplan
