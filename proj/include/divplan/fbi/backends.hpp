#pragma once

#include "divplan/fbi/fbi.hpp"
#include "divplan/satplan/generators.hpp"
#include "divplan/search/generators.hpp"

namespace divplan::fbi {

// FBI over the SAT generators. Solver resource limits become Inconclusive.
FbiResult<core::PlanTrace> fbi_sat(std::size_t k, const satplan::SatSpace& space,
                                   const core::GroundProblem& problem, satplan::HorizonRange range,
                                   const satplan::SolveConfig& config = {},
                                   satplan::SatGenStats* stats = nullptr);

template <search::Simulator Sim>
FbiResult<search::SimTrace<Sim>> fbi_search(std::size_t k, const Sim& sim, const search::SimSpace<Sim>& space,
                                            const search::LtlGeneratorConfig<Sim>& config,
                                            search::LtlGenStats* cell_stats = nullptr,
                                            search::SearchStats* padding_stats = nullptr) {
  using Trace = search::SimTrace<Sim>;
  return fbi<Trace>(
      k, space,
      [&](const std::vector<bspace::Behaviour>& found) {
        return search::behaviour_generator_ltl(sim, space, found, config, cell_stats);
      },
      [&](const std::vector<Trace>& existing) {
        return search::plan_generator_ltl(sim, existing, config.search, padding_stats);
      });
}

}  // namespace divplan::fbi
