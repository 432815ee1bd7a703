#include "divplan/core/io.hpp"

#include <sstream>

namespace divplan::core {

namespace {

std::string literal_string(const GroundProblem& p, const Literal& l) {
  return (l.positive ? "" : "-") + p.fluent_name(l.fluent);
}

Literal parse_literal(const std::unordered_map<std::string, FluentId>& index,
                      std::string text) {
  bool positive = true;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    positive = text[0] == '+';
    text.erase(0, 1);
  }
  auto it = index.find(Fluent::parse(text).canonical());
  if (it == index.end()) throw ProblemError("unknown fluent '" + text + "'");
  return {it->second, positive};
}

}  // namespace

nlohmann::ordered_json to_json(const GroundProblem& problem) {
  nlohmann::ordered_json doc;
  auto& fluents = doc["fluents"] = nlohmann::ordered_json::array();
  for (const auto& f : problem.fluents()) fluents.push_back(f.canonical());
  auto& actions = doc["actions"] = nlohmann::ordered_json::array();
  for (const auto& a : problem.actions()) {
    nlohmann::ordered_json ja;
    ja["name"] = a.name;
    auto& pre = ja["pre"] = nlohmann::ordered_json::array();
    for (auto f : a.pre_pos) pre.push_back(problem.fluent_name(f));
    for (auto f : a.pre_neg) pre.push_back("-" + problem.fluent_name(f));
    auto& add = ja["add"] = nlohmann::ordered_json::array();
    for (auto f : a.add) add.push_back(problem.fluent_name(f));
    auto& del = ja["del"] = nlohmann::ordered_json::array();
    for (auto f : a.del) del.push_back(problem.fluent_name(f));
    ja["cost"] = a.cost;
    actions.push_back(std::move(ja));
  }
  auto& init = doc["init"] = nlohmann::ordered_json::array();
  for (auto f : problem.init().true_fluents()) init.push_back(problem.fluent_name(f));
  auto& goal = doc["goal"] = nlohmann::ordered_json::array();
  for (const auto& conj : problem.goal().disjuncts) {
    auto jc = nlohmann::ordered_json::array();
    for (const auto& l : conj) jc.push_back(literal_string(problem, l));
    goal.push_back(std::move(jc));
  }
  if (problem.budget()) doc["budget"] = *problem.budget();
  return doc;
}

GroundProblem problem_from_json(const nlohmann::json& doc) {
  try {
    std::vector<Fluent> fluents;
    std::unordered_map<std::string, FluentId> index;
    for (const auto& f : doc.at("fluents")) {
      fluents.push_back(Fluent::parse(f.get<std::string>()));
      index.emplace(fluents.back().canonical(), static_cast<FluentId>(fluents.size() - 1));
    }
    std::vector<GroundAction> actions;
    for (const auto& ja : doc.at("actions")) {
      GroundAction a;
      a.name = Fluent::parse(ja.at("name").get<std::string>()).canonical();
      for (const auto& p : ja.value("pre", nlohmann::json::array())) {
        auto lit = parse_literal(index, p.get<std::string>());
        (lit.positive ? a.pre_pos : a.pre_neg).push_back(lit.fluent);
      }
      for (const auto& p : ja.value("add", nlohmann::json::array()))
        a.add.push_back(parse_literal(index, p.get<std::string>()).fluent);
      for (const auto& p : ja.value("del", nlohmann::json::array()))
        a.del.push_back(parse_literal(index, p.get<std::string>()).fluent);
      a.cost = ja.value("cost", 1.0);
      actions.push_back(std::move(a));
    }
    State init(fluents.size());
    for (const auto& f : doc.at("init")) init.set(parse_literal(index, f.get<std::string>()).fluent);
    GoalFormula goal;
    for (const auto& jc : doc.at("goal")) {
      std::vector<Literal> conj;
      for (const auto& l : jc) conj.push_back(parse_literal(index, l.get<std::string>()));
      goal.disjuncts.push_back(std::move(conj));
    }
    std::optional<int> budget;
    if (doc.contains("budget") && !doc["budget"].is_null()) budget = doc["budget"].get<int>();
    return GroundProblem(std::move(fluents), std::move(actions), std::move(init),
                         std::move(goal), budget);
  } catch (const nlohmann::json::exception& e) {
    throw ProblemError(std::string("malformed ground-problem JSON: ") + e.what());
  }
}

Plan parse_plan_text(const GroundProblem& problem, std::string_view text) {
  Plan plan;
  std::istringstream in{std::string(text)};
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (auto c = line.find(';'); c != std::string::npos) line.erase(c);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::string name;
    try {
      name = Fluent::parse(line).canonical();
    } catch (const ProblemError&) {
      throw ProblemError("line " + std::to_string(lineno) + ": malformed action '" + line + "'");
    }
    auto id = problem.find_action(name);
    if (!id)
      throw ProblemError("line " + std::to_string(lineno) + ": unknown action '" + name + "'");
    plan.actions.push_back(*id);
  }
  return plan;
}

}  // namespace divplan::core
