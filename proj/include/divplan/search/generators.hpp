#pragma once

#include <future>
#include <string>
#include <vector>

#include "divplan/bspace/behaviour_space.hpp"
#include "divplan/fbi/generator.hpp"
#include "divplan/search/search.hpp"

namespace divplan::search {

template <class Sim>
using SimSpace = bspace::BehaviourSpace<SimTrace<Sim>>;

template <class Sim>
struct LtlGeneratorConfig {
  SearchConfig<Sim> search;
  // Optional per-cell heuristic; overrides search.heuristic when set.
  std::function<std::function<double(const typename Sim::State&)>(const bspace::Behaviour&)> cell_heuristic;
  unsigned jobs = 1;
  std::uint64_t cell_cap = bspace::kDefaultCellCap;
};

struct CellOutcome {
  std::string cell;
  SearchStatus status;
  SearchStats stats;
};

struct LtlGenStats {
  std::vector<CellOutcome> cells;
  SearchStats total;
};

nlohmann::ordered_json to_json(const LtlGenStats& s);

// Conjunction of the per-dimension formulas of a cell.
template <class Trace>
ltl::Formula cell_formula(const bspace::BehaviourSpace<Trace>& space, const bspace::Behaviour& cell) {
  std::vector<ltl::Formula> parts;
  for (std::size_t i = 0; i < space.arity(); ++i) {
    const auto& f = space.features()[i];
    const auto* expr = std::get_if<bspace::TemporalFormula>(&f.expression);
    if (!expr) throw Error("feature '" + f.name + "' has no temporal expression");
    parts.push_back(expr->formula_for(std::get<std::string>(cell.values.at(i))));
  }
  return parts.size() == 1 ? parts.front() : ltl::make_and(std::move(parts));
}

// Walks the cells in enumeration order, skipping found ones, and searches
// each for a plan. The first success in that order is returned regardless
// of how many cells run concurrently.
template <Simulator Sim>
fbi::GenResult<SimTrace<Sim>> behaviour_generator_ltl(const Sim& sim, const SimSpace<Sim>& space,
                                                      const std::vector<bspace::Behaviour>& found,
                                                      const LtlGeneratorConfig<Sim>& cfg,
                                                      LtlGenStats* stats = nullptr) {
  auto cells = bspace::enumerate_cells(space, cfg.cell_cap);
  auto domains = space.domains();
  bool inconclusive = false;
  auto run = [&](const bspace::Behaviour& cell) {
    auto sc = cfg.search;
    if (cfg.cell_heuristic) sc.heuristic = cfg.cell_heuristic(cell);
    return constrained_search(sim, cell_formula(space, cell), sc);
  };
  const unsigned jobs = std::max(1u, cfg.jobs);
  for (;;) {
    std::vector<bspace::Behaviour> batch;
    while (batch.size() < jobs) {
      auto c = cells.next();
      if (!c) break;
      if (std::find(found.begin(), found.end(), *c) == found.end()) batch.push_back(std::move(*c));
    }
    if (batch.empty()) break;
    std::vector<SearchResult<Sim>> results;
    if (batch.size() == 1) {
      results.push_back(run(batch.front()));
    } else {
      std::vector<std::future<SearchResult<Sim>>> futures;
      for (const auto& c : batch) futures.push_back(std::async(std::launch::async, run, std::cref(c)));
      for (auto& f : futures) results.push_back(f.get());
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      auto& r = results[i];
      if (stats) {
        stats->cells.push_back({describe(domains, batch[i]), r.status, r.stats});
        stats->total += r.stats;
      }
      if (r.status == SearchStatus::Found) {
        auto b = bspace::pbehaviour(space, *r.trace);
        if (b != batch[i])
          throw InternalError("plan found for cell " + describe(domains, batch[i]) + " extracts as " +
                              describe(domains, b));
        return fbi::GenResult<SimTrace<Sim>>::found(std::move(*r.trace));
      }
      if (r.status == SearchStatus::NodeBudgetExceeded) inconclusive = true;
    }
  }
  return inconclusive ? fbi::GenResult<SimTrace<Sim>>::inconclusive()
                      : fbi::GenResult<SimTrace<Sim>>::exhausted();
}

// Unconstrained goal search that skips the exact action sequences of the
// existing plans.
template <Simulator Sim>
fbi::GenResult<SimTrace<Sim>> plan_generator_ltl(const Sim& sim, const std::vector<SimTrace<Sim>>& existing,
                                                 const SearchConfig<Sim>& cfg, SearchStats* stats = nullptr) {
  std::vector<std::vector<std::string>> seqs;
  for (const auto& t : existing) seqs.push_back(t.action_names);
  auto r = constrained_search(sim, ltl::make_true(), cfg, ExclusionTrie(seqs));
  if (stats) *stats += r.stats;
  switch (r.status) {
    case SearchStatus::Found:
      return fbi::GenResult<SimTrace<Sim>>::found(std::move(*r.trace));
    case SearchStatus::NodeBudgetExceeded:
      return fbi::GenResult<SimTrace<Sim>>::inconclusive();
    default:
      return fbi::GenResult<SimTrace<Sim>>::exhausted();
  }
}

}  // namespace divplan::search
