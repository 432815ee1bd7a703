#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "divplan/bspace/behaviour_space.hpp"
#include "divplan/fbi/generator.hpp"

namespace divplan::fbi {

enum class Termination { ReachedK, Exhausted, InconclusiveBudget };

// "reached-k", "behaviours-exhausted-then-plans-exhausted", "inconclusive-budget"
const char* to_string(Termination t);

template <class Trace>
struct FbiResult {
  std::vector<Trace> plans;
  std::vector<bspace::Behaviour> behaviours;  // aligned with plans
  std::vector<int> loop;                      // 1 = novel behaviour, 2 = padding
  std::size_t bdc = 0;
  Termination termination = Termination::Exhausted;
};

template <class Trace>
using BehaviourGenerator = std::function<GenResult<Trace>(const std::vector<bspace::Behaviour>&)>;
template <class Trace>
using PlanGenerator = std::function<GenResult<Trace>(const std::vector<Trace>&)>;

template <class Trace>
FbiResult<Trace> fbi(std::size_t k, const bspace::BehaviourSpace<Trace>& space,
                     const BehaviourGenerator<Trace>& behaviour_gen, const PlanGenerator<Trace>& plan_gen) {
  if (k < 1) throw Error("k must be at least 1");
  FbiResult<Trace> r;
  bool inconclusive = false;
  std::size_t counter = 0;

  while (r.plans.size() < k) {
    auto g = behaviour_gen(r.behaviours);
    if (g.status == GenStatus::Inconclusive) inconclusive = true;
    if (g.status != GenStatus::Found) break;
    auto b = bspace::pbehaviour(space, *g.trace);
    if (std::find(r.behaviours.begin(), r.behaviours.end(), b) != r.behaviours.end())
      throw InternalError("behaviour generator repeated a forbidden behaviour");
    r.plans.push_back(std::move(*g.trace));
    r.behaviours.push_back(std::move(b));
    r.loop.push_back(1);
    ++counter;
  }

  while (r.plans.size() < k) {
    auto g = plan_gen(r.plans);
    if (g.status == GenStatus::Inconclusive) inconclusive = true;
    if (g.status != GenStatus::Found) break;
    if (std::find(r.plans.begin(), r.plans.end(), *g.trace) != r.plans.end())
      throw InternalError("plan generator repeated an existing plan");
    auto b = bspace::pbehaviour(space, *g.trace);
    if (std::find(r.behaviours.begin(), r.behaviours.end(), b) == r.behaviours.end()) {
      // Only a budget-limited first loop can miss a behaviour.
      if (!inconclusive) throw InternalError("padding plan has a behaviour the first loop reported exhausted");
      ++counter;
    }
    r.behaviours.push_back(std::move(b));
    r.plans.push_back(std::move(*g.trace));
    r.loop.push_back(2);
  }

  r.bdc = counter;
  if (bspace::bdc(space, r.plans) != counter) throw InternalError("BDC counter disagrees with the plan set");
  if (r.plans.size() == k)
    r.termination = Termination::ReachedK;
  else
    r.termination = inconclusive ? Termination::InconclusiveBudget : Termination::Exhausted;
  return r;
}

}  // namespace divplan::fbi
