#include "divplan/satplan/generators.hpp"

#include <algorithm>
#include <functional>

namespace divplan::satplan {

std::vector<std::pair<core::FluentId, bool>> behaviour_assignment(const SatSpace& space,
                                                                  const bspace::Behaviour& b) {
  std::vector<std::pair<core::FluentId, bool>> out;
  for (std::size_t i = 0; i < space.arity(); ++i) {
    const auto& feature = space.features()[i];
    const auto* expr = std::get_if<bspace::GoalAssignment>(&feature.expression);
    if (!expr) throw Error("feature '" + feature.name + "' has no goal-assignment expression");
    const auto& bits = std::get<std::vector<bool>>(b.values.at(i));
    if (bits.size() != expr->keys.size()) throw Error("behaviour does not match feature '" + feature.name + "'");
    for (std::size_t k = 0; k < bits.size(); ++k) out.emplace_back(expr->keys[k], bits[k]);
  }
  return out;
}

namespace {

std::optional<core::PlanTrace> horizon_loop(const core::GroundProblem& problem, HorizonRange range,
                                            const SolveConfig& config, SatGenStats* stats,
                                            const std::function<void(CnfTask&)>& constrain) {
  int hi = range.max;
  if (problem.budget()) hi = std::min(hi, *problem.budget());
  for (int h = std::max(0, range.min); h <= hi; ++h) {
    CnfTask task = encode(problem, h);
    constrain(task);
    sat::SolverStats s;
    std::optional<sat::Model> model;
    try {
      model = solve(task, config, &s);
    } catch (const sat::ResourceLimit& e) {
      throw GeneratorTimeout(std::string("horizon ") + std::to_string(h) + ": " + e.what());
    }
    if (stats) {
      ++stats->solver_calls;
      stats->conflicts += s.conflicts;
      stats->decisions += s.decisions;
      ++(model ? stats->sat_answers : stats->unsat_answers);
    }
    if (model) return decode(*model, task);
  }
  return std::nullopt;
}

}  // namespace

std::optional<core::PlanTrace> behaviour_generator_sat(const core::GroundProblem& problem,
                                                       const SatSpace& space,
                                                       const std::vector<bspace::Behaviour>& found,
                                                       HorizonRange range, const SolveConfig& config,
                                                       SatGenStats* stats) {
  std::vector<std::vector<std::pair<core::FluentId, bool>>> forbidden;
  for (const auto& b : found) forbidden.push_back(behaviour_assignment(space, b));
  auto trace = horizon_loop(problem, range, config, stats, [&](CnfTask& task) {
    for (const auto& a : forbidden) forbid_behaviour(task, a);
  });
  if (trace) {
    auto b = bspace::pbehaviour(space, *trace);
    if (std::find(found.begin(), found.end(), b) != found.end())
      throw InternalError("SAT generator returned an already-forbidden behaviour");
  }
  return trace;
}

std::optional<core::PlanTrace> plan_generator_sat(const core::GroundProblem& problem,
                                                  const std::vector<core::Plan>& existing,
                                                  HorizonRange range, const SolveConfig& config,
                                                  SatGenStats* stats) {
  return horizon_loop(problem, range, config, stats, [&](CnfTask& task) {
    for (const auto& p : existing)
      if (static_cast<int>(p.size()) == task.horizon) forbid_plan(task, p);
  });
}

}  // namespace divplan::satplan
