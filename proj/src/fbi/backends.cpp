#include "divplan/fbi/backends.hpp"

namespace divplan::fbi {

FbiResult<core::PlanTrace> fbi_sat(std::size_t k, const satplan::SatSpace& space,
                                   const core::GroundProblem& problem, satplan::HorizonRange range,
                                   const satplan::SolveConfig& config, satplan::SatGenStats* stats) {
  using R = GenResult<core::PlanTrace>;
  auto wrap = [](auto&& call) {
    try {
      auto t = call();
      return t ? R::found(std::move(*t)) : R::exhausted();
    } catch (const satplan::GeneratorTimeout&) {
      return R::inconclusive();
    }
  };
  return fbi<core::PlanTrace>(
      k, space,
      [&](const std::vector<bspace::Behaviour>& found) {
        return wrap([&] { return satplan::behaviour_generator_sat(problem, space, found, range, config, stats); });
      },
      [&](const std::vector<core::PlanTrace>& existing) {
        std::vector<core::Plan> plans;
        for (const auto& t : existing) plans.push_back(t.plan);
        return wrap([&] { return satplan::plan_generator_sat(problem, plans, range, config, stats); });
      });
}

}  // namespace divplan::fbi
