#include "divplan/domains/registry.hpp"

#include <algorithm>

#include <json.hpp>

#include "divplan/core/io.hpp"
#include "divplan/domains/embedded.hpp"
#include "divplan/pddl/grounder.hpp"
#include "divplan/pddl/parser.hpp"

namespace divplan::domains {

std::optional<std::string_view> embedded_file(std::string_view path) {
  for (const auto& f : embedded_files())
    if (f.path == path) return f.content;
  return std::nullopt;
}

std::string data_file(std::string_view path) {
  auto f = embedded_file(path);
  if (!f) throw Error("no bundled data file '" + std::string(path) + "'");
  return std::string(*f);
}

core::GroundProblem ground_pddl(std::string_view domain_text, std::string_view problem_text) {
  auto domain = pddl::parse_domain(domain_text);
  auto problem = pddl::parse_problem(problem_text, domain);
  return pddl::ground(domain, problem);
}

StoryPack story_pack() {
  auto problem = ground_pddl(data_file("story/aladdin-domain.pddl"), data_file("story/aladdin-problem.pddl"));
  auto feature = bspace::goal_endings_feature(problem);
  return {std::move(problem), std::move(feature)};
}

const std::vector<std::string>& declarative_domains() {
  static const std::vector<std::string> names = {"story", "story-tiny", "toggle", "switches"};
  return names;
}

const std::vector<std::string>& simulator_domains() {
  static const std::vector<std::string> names = {"urban", "platformer"};
  return names;
}

core::GroundProblem declarative_problem(const std::string& name) {
  if (name == "story") return story_pack().problem;
  if (name == "story-tiny")
    return ground_pddl(data_file("toy/story-tiny-domain.pddl"), data_file("toy/story-tiny-problem.pddl"));
  if (name == "toggle" || name == "switches")
    return core::problem_from_json(nlohmann::json::parse(data_file("toy/" + name + ".json")));
  throw Error("unknown declarative domain '" + name + "'");
}

urban::UrbanSimulator urban_simulator() {
  return urban::UrbanSimulator(urban::grid_from_json(nlohmann::json::parse(data_file("urban/town.json"))));
}

platformer::PlatformerSimulator platformer_simulator() {
  return platformer::PlatformerSimulator(platformer::Level::parse(data_file("platformer/level1.txt")));
}

}  // namespace divplan::domains
