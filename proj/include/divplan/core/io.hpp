#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "divplan/core/problem.hpp"

namespace divplan::core {

// Ground-problem JSON document:
//   {"fluents": ["p", "at(a,b)"],
//    "actions": [{"name": "go(a,b)", "pre": ["at(a)", "-blocked(b)"],
//                 "add": ["at(b)"], "del": ["at(a)"], "cost": 1}],
//    "init": ["at(a)"],
//    "goal": [["at(b)"], ["-blocked(b)", "p"]],
//    "budget": 10}
// Literals are fluent strings with an optional leading '+' or '-'. The goal
// is an array of conjunctions (DNF); "budget" is optional.
nlohmann::ordered_json to_json(const GroundProblem& problem);
GroundProblem problem_from_json(const nlohmann::json& doc);

// One action per line, either canonical "move(a,b)" or PDDL "(move a b)".
// Blank lines and ';' comments are skipped. Unknown actions throw
// ProblemError.
Plan parse_plan_text(const GroundProblem& problem, std::string_view text);

}  // namespace divplan::core
