#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "divplan/bspace/behaviour_space.hpp"
#include "divplan/core/problem.hpp"
#include "divplan/search/search.hpp"

namespace divplan::cli {

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct FeatureSpec {
  std::string kind;  // goal-endings | categorical-score | ltl
  std::string name;
  std::string score;   // categorical-score
  std::string suffix;  // categorical-score
  std::optional<bspace::BinTable> bins;
  std::vector<std::pair<std::string, std::string>> values;  // ltl: label, formula text
};

struct SpaceSpec {
  std::vector<FeatureSpec> features;
};

SpaceSpec parse_space(const nlohmann::json& doc);

// Bin table shared by the categorical features, or the standard one.
bspace::BinTable space_bins(const SpaceSpec& spec);

bspace::BehaviourSpace<core::PlanTrace> build_plan_space(const SpaceSpec& spec, const core::GroundProblem& problem);

template <class Sim>
bspace::BehaviourSpace<search::SimTrace<Sim>> build_sim_space(
    const SpaceSpec& spec, const Sim& sim,
    const std::map<std::string, std::function<double(const typename Sim::State&)>>& scores) {
  using Trace = search::SimTrace<Sim>;
  std::vector<bspace::Feature<Trace>> features;
  for (const auto& f : spec.features) {
    if (f.kind == "categorical-score") {
      auto it = scores.find(f.score);
      if (it == scores.end()) throw ConfigError("feature '" + f.name + "': this domain has no score '" + f.score + "'");
      auto bins = f.bins ? *f.bins : bspace::BinTable::standard();
      for (const auto& l : bins.labels())
        if (!sim.alphabet().contains(l + f.suffix))
          throw ConfigError("feature '" + f.name + "': the simulator has no proposition '" + l + f.suffix + "'");
      auto score = it->second;
      features.push_back(bspace::categorical_score_feature<Trace>(
          f.name, [score](const Trace& t) { return score(t.final_state()); }, bins, f.suffix));
    } else if (f.kind == "ltl") {
      std::vector<std::pair<std::string, ltl::Formula>> per_label;
      for (const auto& [label, text] : f.values) per_label.emplace_back(label, ltl::parse(text));
      try {
        features.push_back(bspace::ltl_feature<Trace>(f.name, per_label, sim.alphabet(),
                                                      [](const Trace& t) -> const ltl::PropTrace& { return t.props; }));
      } catch (const ltl::UnknownAtom& e) {
        throw ConfigError("feature '" + f.name + "': " + e.what());
      }
    } else {
      throw ConfigError("feature '" + f.name + "': kind '" + f.kind + "' needs a declarative problem");
    }
  }
  return bspace::BehaviourSpace<Trace>(std::move(features));
}

}  // namespace divplan::cli
