#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "divplan/core/io.hpp"
#include "divplan/core/problem.hpp"

namespace testutil {

inline divplan::core::GroundProblem from_json(const std::string& text) {
  return divplan::core::problem_from_json(nlohmann::json::parse(text));
}

// Goal p | q, set-p needs !q and set-q needs !p: exactly two reachable
// goal endings, {p} and {q}.
inline divplan::core::GroundProblem two_endings() {
  return from_json(R"({
    "fluents": ["p", "q"],
    "actions": [
      {"name": "set-p", "pre": ["-q"], "add": ["p"]},
      {"name": "set-q", "pre": ["-p"], "add": ["q"]}
    ],
    "init": [], "goal": [["p"], ["q"]]})");
}

// Two interchangeable one-step plans.
inline divplan::core::GroundProblem symmetric() {
  return from_json(R"({
    "fluents": ["g"],
    "actions": [
      {"name": "left", "pre": ["-g"], "add": ["g"]},
      {"name": "right", "pre": ["-g"], "add": ["g"]}
    ],
    "init": [], "goal": [["g"]]})");
}

inline divplan::core::GroundProblem one_action() {
  return from_json(R"({
    "fluents": ["g"],
    "actions": [{"name": "go", "pre": ["-g"], "add": ["g"]}],
    "init": [], "goal": [["g"]]})");
}

// Names of every plan, one string per plan ("a b c").
inline std::set<std::string> plan_strings(const divplan::core::GroundProblem& p,
                                          const std::vector<divplan::core::Plan>& plans) {
  std::set<std::string> out;
  for (const auto& plan : plans) {
    std::string s;
    for (const auto& n : divplan::core::action_names(p, plan)) s += (s.empty() ? "" : " ") + n;
    out.insert(s);
  }
  return out;
}

}  // namespace testutil
