#include "divplan/cli/space_config.hpp"

namespace divplan::cli {

namespace {

bspace::BinTable parse_bins(const nlohmann::json& j) {
  std::vector<bspace::Bin> bins;
  for (const auto& b : j) {
    bspace::Bin bin;
    bin.label = b.at("label").get<std::string>();
    bin.lo = b.at("lo").get<double>();
    bin.hi = b.at("hi").get<double>();
    bin.lo_closed = b.value("lo_closed", false);
    bin.hi_closed = b.value("hi_closed", true);
    bins.push_back(bin);
  }
  return bspace::BinTable(std::move(bins));
}

}  // namespace

SpaceSpec parse_space(const nlohmann::json& doc) {
  SpaceSpec spec;
  try {
    for (const auto& jf : doc.at("features")) {
      FeatureSpec f;
      f.kind = jf.at("kind").get<std::string>();
      f.name = jf.value("name", f.kind);
      if (f.kind == "goal-endings") {
      } else if (f.kind == "categorical-score") {
        f.score = jf.at("score").get<std::string>();
        f.suffix = jf.value("suffix", "");
        if (jf.contains("bins")) f.bins = parse_bins(jf["bins"]);
      } else if (f.kind == "ltl") {
        for (const auto& v : jf.at("values"))
          f.values.emplace_back(v.at("label").get<std::string>(), v.at("formula").get<std::string>());
        if (f.values.empty()) throw ConfigError("feature '" + f.name + "' has no values");
      } else {
        throw ConfigError("unknown feature kind '" + f.kind + "' (expected goal-endings, categorical-score or ltl)");
      }
      spec.features.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed behaviour-space config: ") + e.what());
  }
  if (spec.features.empty()) throw ConfigError("behaviour-space config has no features");
  return spec;
}

bspace::BinTable space_bins(const SpaceSpec& spec) {
  std::optional<bspace::BinTable> bins;
  for (const auto& f : spec.features) {
    if (f.kind != "categorical-score" || !f.bins) continue;
    if (bins && bins->bins().size() != f.bins->bins().size())
      throw ConfigError("categorical features must share one bin table");
    if (bins) {
      for (std::size_t i = 0; i < bins->bins().size(); ++i) {
        const auto& a = bins->bins()[i];
        const auto& b = f.bins->bins()[i];
        if (a.label != b.label || a.lo != b.lo || a.hi != b.hi || a.lo_closed != b.lo_closed ||
            a.hi_closed != b.hi_closed)
          throw ConfigError("categorical features must share one bin table");
      }
    }
    bins = f.bins;
  }
  return bins ? *bins : bspace::BinTable::standard();
}

bspace::BehaviourSpace<core::PlanTrace> build_plan_space(const SpaceSpec& spec, const core::GroundProblem& problem) {
  std::vector<bspace::Feature<core::PlanTrace>> features;
  for (const auto& f : spec.features) {
    if (f.kind != "goal-endings")
      throw ConfigError("feature '" + f.name + "': the SAT backend supports goal-endings features only");
    if (problem.goal().fluents().empty())
      throw ConfigError("feature '" + f.name + "': the problem's goal mentions no fluents");
    features.push_back(bspace::goal_endings_feature(problem, f.name));
  }
  return bspace::BehaviourSpace<core::PlanTrace>(std::move(features));
}

}  // namespace divplan::cli
