#include "divplan/satplan/encoding.hpp"

#include "divplan/sat/dimacs.hpp"

namespace divplan::satplan {

int CnfTask::fluent_var(core::FluentId f, int step) const {
  return 1 + step * static_cast<int>(num_fluents) + static_cast<int>(f);
}

int CnfTask::action_var(core::ActionId a, int step) const {
  return 1 + (horizon + 1) * static_cast<int>(num_fluents) + step * static_cast<int>(num_actions) +
         static_cast<int>(a);
}

int CnfTask::first_aux_var() const {
  return 1 + (horizon + 1) * static_cast<int>(num_fluents) + horizon * static_cast<int>(num_actions);
}

CnfTask encode(const core::GroundProblem& problem, int horizon) {
  if (horizon < 0) throw Error("horizon must be non-negative");
  CnfTask task;
  task.horizon = horizon;
  task.num_fluents = problem.fluents().size();
  task.num_actions = problem.actions().size();
  auto& cnf = task.cnf;
  cnf.num_vars = task.first_aux_var() - 1;
  const auto F = static_cast<core::FluentId>(task.num_fluents);
  const auto A = static_cast<core::ActionId>(task.num_actions);

  for (core::FluentId f = 0; f < F; ++f) {
    int v = task.fluent_var(f, 0);
    cnf.add({problem.init().test(f) ? v : -v});
  }

  // Fluent -> actions that add / delete it, for the frame axioms.
  std::vector<std::vector<core::ActionId>> adders(F), deleters(F);
  for (core::ActionId a = 0; a < A; ++a) {
    for (auto f : problem.action(a).add) adders[f].push_back(a);
    for (auto f : problem.action(a).del) deleters[f].push_back(a);
  }

  for (int t = 0; t < horizon; ++t) {
    std::vector<int> at_least_one;
    for (core::ActionId a = 0; a < A; ++a) at_least_one.push_back(task.action_var(a, t));
    cnf.add(at_least_one);
    for (core::ActionId a = 0; a < A; ++a)
      for (core::ActionId b = a + 1; b < A; ++b) cnf.add({-task.action_var(a, t), -task.action_var(b, t)});

    for (core::ActionId a = 0; a < A; ++a) {
      const auto& act = problem.action(a);
      int av = task.action_var(a, t);
      for (auto f : act.pre_pos) cnf.add({-av, task.fluent_var(f, t)});
      for (auto f : act.pre_neg) cnf.add({-av, -task.fluent_var(f, t)});
      for (auto f : act.add) cnf.add({-av, task.fluent_var(f, t + 1)});
      for (auto f : act.del) cnf.add({-av, -task.fluent_var(f, t + 1)});
    }
    for (core::FluentId f = 0; f < F; ++f) {
      int now = task.fluent_var(f, t), next = task.fluent_var(f, t + 1);
      std::vector<int> became_true{now, -next};
      for (auto a : adders[f]) became_true.push_back(task.action_var(a, t));
      cnf.add(std::move(became_true));
      std::vector<int> became_false{-now, next};
      for (auto a : deleters[f]) became_false.push_back(task.action_var(a, t));
      cnf.add(std::move(became_false));
    }
  }

  const auto& goal = problem.goal();
  auto goal_lit = [&](const core::Literal& l) {
    int v = task.fluent_var(l.fluent, horizon);
    return l.positive ? v : -v;
  };
  if (goal.disjuncts.size() == 1) {
    for (const auto& l : goal.disjuncts[0]) cnf.add({goal_lit(l)});
  } else if (!goal.is_trivial()) {
    // Tseitin selector per disjunct; an empty disjunct list leaves the empty
    // clause, i.e. an unsatisfiable goal.
    std::vector<int> some;
    for (const auto& conj : goal.disjuncts) {
      int d = cnf.new_var();
      some.push_back(d);
      for (const auto& l : conj) cnf.add({-d, goal_lit(l)});
    }
    cnf.add(std::move(some));
  }
  return task;
}

core::PlanTrace decode(const sat::Model& model, const CnfTask& task) {
  if (model.size() < static_cast<std::size_t>(task.first_aux_var()))
    throw MalformedModel("model does not cover the task's variables");
  core::PlanTrace trace;
  for (int t = 0; t <= task.horizon; ++t) {
    core::State s(task.num_fluents);
    for (core::FluentId f = 0; f < task.num_fluents; ++f)
      if (model[static_cast<std::size_t>(task.fluent_var(f, t))]) s.set(f);
    trace.states.push_back(std::move(s));
  }
  for (int t = 0; t < task.horizon; ++t) {
    std::optional<core::ActionId> chosen;
    for (core::ActionId a = 0; a < task.num_actions; ++a) {
      if (!model[static_cast<std::size_t>(task.action_var(a, t))]) continue;
      if (chosen) throw MalformedModel("two actions at step " + std::to_string(t));
      chosen = a;
    }
    if (!chosen) throw MalformedModel("no action at step " + std::to_string(t));
    trace.plan.actions.push_back(*chosen);
  }
  return trace;
}

std::vector<int> forbid_behaviour(CnfTask& task,
                                  const std::vector<std::pair<core::FluentId, bool>>& assignment) {
  std::vector<int> clause;
  for (const auto& [f, value] : assignment) {
    if (f >= task.num_fluents) throw Error("forbid_behaviour: fluent id out of range");
    int v = task.fluent_var(f, task.horizon);
    clause.push_back(value ? -v : v);
  }
  task.cnf.add(clause);
  return clause;
}

std::vector<int> forbid_plan(CnfTask& task, const core::Plan& plan) {
  if (static_cast<int>(plan.size()) != task.horizon)
    throw HorizonMismatch("plan of length " + std::to_string(plan.size()) +
                          " cannot be forbidden at horizon " + std::to_string(task.horizon));
  std::vector<int> clause;
  for (int t = 0; t < task.horizon; ++t) {
    auto a = plan.actions[static_cast<std::size_t>(t)];
    if (a >= task.num_actions) throw Error("forbid_plan: action id out of range");
    clause.push_back(-task.action_var(a, t));
  }
  task.cnf.add(clause);
  return clause;
}

std::optional<sat::Model> solve(const CnfTask& task, const SolveConfig& config,
                                sat::SolverStats* stats) {
  if (!config.external_command.empty()) return sat::solve_external(task.cnf, config.external_command);
  return sat::solve(task.cnf, config.solver, stats);
}

nlohmann::ordered_json varmap_json(const CnfTask& task, const core::GroundProblem& problem) {
  nlohmann::ordered_json doc;
  doc["horizon"] = task.horizon;
  doc["num_vars"] = task.cnf.num_vars;
  auto& fluents = doc["fluents"] = nlohmann::ordered_json::object();
  for (core::FluentId f = 0; f < task.num_fluents; ++f) {
    auto vars = nlohmann::ordered_json::array();
    for (int t = 0; t <= task.horizon; ++t) vars.push_back(task.fluent_var(f, t));
    fluents[problem.fluent_name(f)] = std::move(vars);
  }
  auto& actions = doc["actions"] = nlohmann::ordered_json::object();
  for (core::ActionId a = 0; a < task.num_actions; ++a) {
    auto vars = nlohmann::ordered_json::array();
    for (int t = 0; t < task.horizon; ++t) vars.push_back(task.action_var(a, t));
    actions[problem.action(a).name] = std::move(vars);
  }
  return doc;
}

}  // namespace divplan::satplan
