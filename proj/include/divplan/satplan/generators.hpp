#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "divplan/bspace/behaviour_space.hpp"
#include "divplan/core/problem.hpp"
#include "divplan/satplan/encoding.hpp"

namespace divplan::satplan {

using SatSpace = bspace::BehaviourSpace<core::PlanTrace>;

struct HorizonRange {
  int min = 0;
  int max = 20;
};

class GeneratorTimeout : public Error {
 public:
  using Error::Error;
};

struct SatGenStats {
  std::uint64_t solver_calls = 0;
  std::uint64_t sat_answers = 0;
  std::uint64_t unsat_answers = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
};

// The (fluent, value) pairs a behaviour fixes at the last step. Every
// feature of the space must carry a GoalAssignment expression.
std::vector<std::pair<core::FluentId, bool>> behaviour_assignment(const SatSpace& space,
                                                                  const bspace::Behaviour& b);

// Tries horizons in ascending order, forbidding every found behaviour, and
// returns the first plan found. The horizon range is clipped to the
// problem's budget. Solver resource limits surface as GeneratorTimeout.
std::optional<core::PlanTrace> behaviour_generator_sat(const core::GroundProblem& problem,
                                                       const SatSpace& space,
                                                       const std::vector<bspace::Behaviour>& found,
                                                       HorizonRange range,
                                                       const SolveConfig& config = {},
                                                       SatGenStats* stats = nullptr);

// Same loop without behaviour constraints; plans in `existing` (of matching
// length) are excluded instead.
std::optional<core::PlanTrace> plan_generator_sat(const core::GroundProblem& problem,
                                                  const std::vector<core::Plan>& existing,
                                                  HorizonRange range,
                                                  const SolveConfig& config = {},
                                                  SatGenStats* stats = nullptr);

}  // namespace divplan::satplan
