#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "divplan/bspace/behaviour_space.hpp"
#include "divplan/core/problem.hpp"
#include "divplan/domains/platformer.hpp"
#include "divplan/domains/urban.hpp"

namespace divplan::domains {

// Contents of a bundled data file; throws if absent.
std::string data_file(std::string_view path);

core::GroundProblem ground_pddl(std::string_view domain_text, std::string_view problem_text);

struct StoryPack {
  core::GroundProblem problem;
  bspace::Feature<core::PlanTrace> feature;
};

// The bundled Aladdin world with its possible-endings feature.
StoryPack story_pack();

// Declarative bundled problems: story, story-tiny, toggle, switches.
const std::vector<std::string>& declarative_domains();
// Simulator bundled problems: urban, platformer.
const std::vector<std::string>& simulator_domains();

core::GroundProblem declarative_problem(const std::string& name);

urban::UrbanSimulator urban_simulator();
platformer::PlatformerSimulator platformer_simulator();

}  // namespace divplan::domains
