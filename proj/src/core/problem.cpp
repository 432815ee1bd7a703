#include "divplan/core/problem.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <sstream>

namespace divplan::core {

std::string normalise_identifier(std::string_view id) {
  std::string out(id);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

Fluent::Fluent(std::string_view n, std::vector<std::string> a)
    : name(normalise_identifier(n)), args(std::move(a)) {
  for (auto& arg : args) arg = normalise_identifier(arg);
}

std::string Fluent::canonical() const {
  if (args.empty()) return name;
  std::string out = name + "(";
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i];
  }
  out += ')';
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.';
  });
}

}  // namespace

Fluent Fluent::parse(std::string_view text) {
  std::string s = trim(text);
  auto fail = [&] { return ProblemError("malformed atom '" + std::string(text) + "'"); };
  if (s.empty()) throw fail();
  if (s.front() == '(') {
    if (s.back() != ')') throw fail();
    std::istringstream in(s.substr(1, s.size() - 2));
    std::string name;
    if (!(in >> name) || !valid_identifier(name)) throw fail();
    std::vector<std::string> args;
    for (std::string a; in >> a;) {
      if (!valid_identifier(a)) throw fail();
      args.push_back(a);
    }
    return Fluent(name, std::move(args));
  }
  auto open = s.find('(');
  if (open == std::string::npos) {
    if (!valid_identifier(s)) throw fail();
    return Fluent(s);
  }
  if (s.back() != ')') throw fail();
  std::string name = trim(std::string_view(s).substr(0, open));
  if (!valid_identifier(name)) throw fail();
  std::vector<std::string> args;
  std::string inner = s.substr(open + 1, s.size() - open - 2);
  if (!trim(inner).empty()) {
    std::stringstream ss(inner);
    for (std::string a; std::getline(ss, a, ',');) {
      a = trim(a);
      if (!valid_identifier(a)) throw fail();
      args.push_back(a);
    }
  }
  return Fluent(name, std::move(args));
}

State::State(std::size_t universe_size)
    : words_((universe_size + 63) / 64, 0), size_(universe_size) {}

bool State::test(FluentId f) const {
  if (f >= size_) throw ProblemError("fluent id out of range");
  return (words_[f / 64] >> (f % 64)) & 1u;
}

void State::set(FluentId f, bool value) {
  if (f >= size_) throw ProblemError("fluent id out of range");
  const std::uint64_t bit = std::uint64_t{1} << (f % 64);
  if (value)
    words_[f / 64] |= bit;
  else
    words_[f / 64] &= ~bit;
}

std::vector<FluentId> State::true_fluents() const {
  std::vector<FluentId> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word) {
      int b = std::countr_zero(word);
      out.push_back(static_cast<FluentId>(w * 64 + b));
      word &= word - 1;
    }
  }
  return out;
}

std::size_t State::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

std::size_t State::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto w : words_) h = (h ^ w) * 1099511628211ull;
  return h;
}

bool GoalFormula::holds(const State& s) const {
  return std::any_of(disjuncts.begin(), disjuncts.end(), [&](const auto& conj) {
    return std::all_of(conj.begin(), conj.end(),
                       [&](const Literal& l) { return s.test(l.fluent) == l.positive; });
  });
}

bool GoalFormula::is_trivial() const {
  return std::any_of(disjuncts.begin(), disjuncts.end(),
                     [](const auto& conj) { return conj.empty(); });
}

std::vector<FluentId> GoalFormula::fluents() const {
  std::vector<FluentId> out;
  for (const auto& conj : disjuncts)
    for (const auto& l : conj) out.push_back(l.fluent);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

GroundProblem::GroundProblem(std::vector<Fluent> fluents,
                             std::vector<GroundAction> actions, State init,
                             GoalFormula goal, std::optional<int> budget)
    : fluents_(std::move(fluents)),
      actions_(std::move(actions)),
      init_(std::move(init)),
      goal_(std::move(goal)),
      budget_(budget) {
  const auto n = fluents_.size();
  for (FluentId i = 0; i < n; ++i) {
    if (!fluent_index_.emplace(fluents_[i].canonical(), i).second)
      throw ProblemError("duplicate fluent '" + fluents_[i].canonical() + "'");
  }
  if (init_.universe_size() != n)
    throw ProblemError("initial state is not over the fluent universe");
  auto check_ids = [&](const std::vector<FluentId>& ids, const std::string& where) {
    for (auto f : ids)
      if (f >= n) throw ProblemError("unknown fluent id in " + where);
  };
  for (ActionId a = 0; a < actions_.size(); ++a) {
    auto& act = actions_[a];
    check_ids(act.pre_pos, act.name);
    check_ids(act.pre_neg, act.name);
    check_ids(act.add, act.name);
    check_ids(act.del, act.name);
    for (auto* v : {&act.pre_pos, &act.pre_neg, &act.add, &act.del}) {
      std::sort(v->begin(), v->end());
      v->erase(std::unique(v->begin(), v->end()), v->end());
    }
    for (auto f : act.add)
      if (std::binary_search(act.del.begin(), act.del.end(), f))
        throw ProblemError("action '" + act.name + "' adds and deletes " + fluents_[f].canonical());
    if (!(act.cost >= 0.0)) throw ProblemError("action '" + act.name + "' has negative cost");
    if (!action_index_.emplace(act.name, a).second)
      throw ProblemError("duplicate action '" + act.name + "'");
  }
  for (const auto& conj : goal_.disjuncts)
    for (const auto& l : conj)
      if (l.fluent >= n) throw ProblemError("goal mentions an unknown fluent id");
  if (budget_ && *budget_ <= 0) throw ProblemError("budget must be positive");
}

std::optional<FluentId> GroundProblem::find_fluent(std::string_view canonical) const {
  auto it = fluent_index_.find(std::string(canonical));
  if (it == fluent_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<ActionId> GroundProblem::find_action(std::string_view name) const {
  auto it = action_index_.find(std::string(name));
  if (it == action_index_.end()) return std::nullopt;
  return it->second;
}

State GroundProblem::make_state(const std::vector<FluentId>& true_fluents) const {
  State s(fluents_.size());
  for (auto f : true_fluents) s.set(f);
  return s;
}

InapplicableAction::InapplicableAction(std::size_t index, const std::string& action)
    : PlanError("action " + std::to_string(index) + " ('" + action + "') is not applicable"),
      index_(index) {}

BudgetExceeded::BudgetExceeded(std::size_t length, int budget)
    : PlanError("plan length " + std::to_string(length) + " exceeds budget " +
                std::to_string(budget)) {}

bool applicable(const State& state, const GroundAction& action) {
  for (auto f : action.pre_pos)
    if (!state.test(f)) return false;
  for (auto f : action.pre_neg)
    if (state.test(f)) return false;
  return true;
}

State apply(const State& state, const GroundAction& action) {
  if (!applicable(state, action)) throw InapplicableAction(0, action.name);
  State next = state;
  for (auto f : action.del) next.set(f, false);
  for (auto f : action.add) next.set(f, true);
  return next;
}

PlanTrace validate_plan(const GroundProblem& problem, const Plan& plan) {
  if (problem.budget() && plan.size() > static_cast<std::size_t>(*problem.budget()))
    throw BudgetExceeded(plan.size(), *problem.budget());
  PlanTrace trace{plan, {problem.init()}};
  trace.states.reserve(plan.size() + 1);
  for (std::size_t i = 0; i < plan.size(); ++i) {
    if (plan.actions[i] >= problem.actions().size())
      throw InapplicableAction(i, "<unknown action id>");
    const auto& act = problem.action(plan.actions[i]);
    if (!applicable(trace.states.back(), act)) throw InapplicableAction(i, act.name);
    trace.states.push_back(apply(trace.states.back(), act));
  }
  if (!problem.goal().holds(trace.final_state())) throw GoalNotSatisfied();
  return trace;
}

double plan_cost(const GroundProblem& problem, const Plan& plan) {
  double total = 0.0;
  for (auto a : plan.actions) total += problem.action(a).cost;
  return total;
}

std::vector<Plan> enumerate_plans(const GroundProblem& problem, int max_len) {
  if (max_len < 0) throw ProblemError("max_len must be non-negative");
  int limit = max_len;
  if (problem.budget()) limit = std::min(limit, *problem.budget());

  std::vector<Plan> out;
  // Iterative deepening keeps the (length, lexicographic) order without a
  // final sort.
  for (int len = 0; len <= limit; ++len) {
    Plan prefix;
    std::vector<State> states{problem.init()};
    auto rec = [&](auto&& self) -> void {
      if (static_cast<int>(prefix.size()) == len) {
        if (problem.goal().holds(states.back())) out.push_back(prefix);
        return;
      }
      for (ActionId a = 0; a < problem.actions().size(); ++a) {
        const auto& act = problem.action(a);
        if (!applicable(states.back(), act)) continue;
        prefix.actions.push_back(a);
        states.push_back(apply(states.back(), act));
        self(self);
        states.pop_back();
        prefix.actions.pop_back();
      }
    };
    rec(rec);
  }
  return out;
}

std::vector<std::string> action_names(const GroundProblem& problem, const Plan& plan) {
  std::vector<std::string> out;
  out.reserve(plan.size());
  for (auto a : plan.actions) out.push_back(problem.action(a).name);
  return out;
}

}  // namespace divplan::core
