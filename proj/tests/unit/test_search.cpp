#include <doctest.h>

#include <functional>

#include "divplan/domains/registry.hpp"
#include "divplan/search/generators.hpp"
#include "divplan/search/search.hpp"
#include "ltl_oracle.hpp"

using namespace divplan;
using namespace divplan::search;

namespace {

// 3x3 grid. Start middle-left, goal middle-right, the centre is a wall and
// bottom-centre a pit. Atom a marks the top row, b the bottom row.
struct Grid {
  using State = std::pair<int, int>;
  using Action = char;
  int limit = 6;
  ltl::Alphabet ab{{"a", "b"}};

  State initial() const { return {1, 0}; }
  std::vector<char> legal_actions(const State& s) const {
    std::vector<char> out;
    for (char c : std::string("udlr")) {
      auto [r, col] = move(s, c);
      if (r >= 0 && r < 3 && col >= 0 && col < 3 && !(r == 1 && col == 1)) out.push_back(c);
    }
    return out;
  }
  static State move(const State& s, char c) {
    switch (c) {
      case 'u': return {s.first - 1, s.second};
      case 'd': return {s.first + 1, s.second};
      case 'l': return {s.first, s.second - 1};
      default: return {s.first, s.second + 1};
    }
  }
  std::optional<State> step(const State& s, char c) const {
    auto n = move(s, c);
    if (n == State{2, 1}) return std::nullopt;
    return n;
  }
  ltl::Valuation propositions(const State& s) const { return {s.first == 0, s.first == 2}; }
  bool is_goal(const State& s) const { return s == State{1, 2}; }
  std::optional<int> budget() const { return limit; }
  const ltl::Alphabet& alphabet() const { return ab; }
  std::string state_key(const State& s) const { return std::to_string(s.first) + "," + std::to_string(s.second); }
  std::string action_name(char c) const { return std::string(1, c); }
};

static_assert(Simulator<Grid>);

// Brute force over every action sequence within the budget.
bool oracle_exists(const Grid& g, const ltl::Formula& f) {
  std::vector<std::vector<bool>> props;
  std::function<bool(Grid::State, int)> rec = [&](Grid::State s, int depth) {
    props.push_back(g.propositions(s));
    bool ok = g.is_goal(s) && oracle::holds(f, props, 0);
    if (!ok && depth < g.limit)
      for (char c : g.legal_actions(s))
        if (auto n = g.step(s, c); n && rec(*n, depth + 1)) {
          ok = true;
          break;
        }
    props.pop_back();
    return ok;
  };
  return rec(g.initial(), 0);
}

// The trace replays through the simulator and satisfies the target.
void check_trace(const Grid& g, const SimTrace<Grid>& t, const ltl::Formula& f) {
  REQUIRE(t.states.size() == t.actions.size() + 1);
  REQUIRE(t.props.steps.size() == t.states.size());
  CHECK(int(t.size()) <= g.limit);
  auto s = g.initial();
  CHECK(t.states.front() == s);
  for (std::size_t i = 0; i < t.actions.size(); ++i) {
    auto n = g.step(s, t.actions[i]);
    REQUIRE(n);
    s = *n;
    CHECK(t.states[i + 1] == s);
    CHECK(t.action_names[i] == g.action_name(t.actions[i]));
  }
  CHECK(g.is_goal(s));
  CHECK(oracle::holds(f, t.props.steps, 0));
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("two routes around the wall") {
  Grid g;
  SearchConfig<Grid> cfg;
  auto top = constrained_search(g, ltl::parse("F a"), cfg);
  REQUIRE(top.status == SearchStatus::Found);
  CHECK(top.trace->action_names == std::vector<std::string>{"u", "r", "r", "d"});
  auto none = constrained_search(g, ltl::parse("true"), cfg);
  REQUIRE(none.status == SearchStatus::Found);
  CHECK(none.trace->size() == 4);
  auto bottom = constrained_search(g, ltl::parse("F b & G !a"), cfg);
  CHECK(bottom.status == SearchStatus::Exhausted);
  CHECK(bottom.stats.dead_ends > 0);
  g.limit = 3;
  CHECK(constrained_search(g, ltl::parse("true"), cfg).status == SearchStatus::Exhausted);
}

TEST_CASE("search agrees with brute force on every depth-2 target") {
  Grid g;
  for (auto strategy : {Strategy::BreadthFirst, Strategy::DepthFirst, Strategy::BestFirst})
    for (bool pruning : {true, false}) {
      SearchConfig<Grid> cfg;
      cfg.strategy = strategy;
      cfg.monitor_pruning = pruning;
      if (strategy == Strategy::BestFirst) cfg.heuristic = [](const Grid::State& s) { return double(2 - s.second); };
      int found = 0, mismatches = 0;
      for (const auto& f : oracle::formulas_up_to(2)) {
        auto r = constrained_search(g, f, cfg);
        REQUIRE(r.status != SearchStatus::NodeBudgetExceeded);
        bool exists = oracle_exists(g, f);
        if ((r.status == SearchStatus::Found) != exists) ++mismatches;
        if (r.trace) {
          ++found;
          check_trace(g, *r.trace, f);
        }
      }
      CAPTURE(to_string(strategy));
      CAPTURE(pruning);
      CHECK(mismatches == 0);
      CHECK(found > 100);
    }
}

TEST_CASE("breadth-first returns a shortest witness") {
  Grid g;
  SearchConfig<Grid> cfg;
  auto r = constrained_search(g, ltl::parse("F b"), cfg);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.trace->size() == 6);
}

TEST_CASE("monitor pruning cuts nodes without changing the answer") {
  Grid g;
  SearchConfig<Grid> on, off;
  off.monitor_pruning = false;
  auto f = ltl::parse("G !b");
  auto a = constrained_search(g, f, on), b = constrained_search(g, f, off);
  CHECK(a.status == b.status);
  CHECK(a.stats.pruned > 0);
  CHECK(b.stats.pruned == 0);
  CHECK(a.stats.expanded < b.stats.expanded);
}

TEST_CASE("determinism and seeding") {
  Grid g;
  SearchConfig<Grid> cfg;
  auto f = ltl::parse("F a | F b");
  auto a = constrained_search(g, f, cfg), b = constrained_search(g, f, cfg);
  REQUIRE(a.trace);
  CHECK(a.trace->action_names == b.trace->action_names);
  cfg.seed = 99;
  auto c = constrained_search(g, f, cfg), d = constrained_search(g, f, cfg);
  REQUIRE(c.trace);
  CHECK(c.trace->action_names == d.trace->action_names);
  check_trace(g, *c.trace, f);
}

TEST_CASE("node budget") {
  Grid g;
  SearchConfig<Grid> cfg;
  cfg.node_budget = 2;
  CHECK(constrained_search(g, ltl::parse("true"), cfg).status == SearchStatus::NodeBudgetExceeded);
  cfg.node_budget = 0;
  CHECK_THROWS(constrained_search(g, ltl::parse("true"), cfg));
  CHECK_THROWS_AS(constrained_search(g, ltl::parse("F zzz"), SearchConfig<Grid>{}), ltl::UnknownAtom);
}

TEST_CASE("infinite heuristic prunes") {
  Grid g;
  SearchConfig<Grid> cfg;
  cfg.strategy = Strategy::BestFirst;
  cfg.heuristic = [](const Grid::State& s) { return s.first == 2 ? INFINITY : 0.0; };
  auto r = constrained_search(g, ltl::parse("true"), cfg);
  REQUIRE(r.status == SearchStatus::Found);
  CHECK(r.trace->action_names.front() == "u");
  CHECK(r.stats.pruned > 0);
  cfg.heuristic = [](const Grid::State& s) { return s.first == 0 ? INFINITY : 0.0; };
  CHECK(constrained_search(g, ltl::parse("true"), cfg).status == SearchStatus::Exhausted);
}

TEST_CASE("exclusion trie") {
  ExclusionTrie empty;
  CHECK(empty.root() == ExclusionTrie::kOff);
  CHECK(empty.child(empty.root(), "x") == ExclusionTrie::kOff);
  ExclusionTrie t({{"a", "b"}, {"a"}});
  int a = t.child(t.root(), "a");
  CHECK(a != ExclusionTrie::kOff);
  CHECK(t.terminal(a));
  CHECK(t.terminal(t.child(a, "b")));
  CHECK_FALSE(t.terminal(t.root()));
  CHECK(t.child(a, "c") == ExclusionTrie::kOff);
  CHECK_FALSE(t.terminal(ExclusionTrie::kOff));
}

TEST_CASE("plan generator enumerates distinct sequences") {
  Grid g;
  g.limit = 4;
  std::vector<SimTrace<Grid>> plans;
  for (;;) {
    auto r = plan_generator_ltl(g, plans, SearchConfig<Grid>{});
    if (r.status != fbi::GenStatus::Found) break;
    for (auto& p : plans) CHECK(p.action_names != r.trace->action_names);
    plans.push_back(*r.trace);
  }
  // Within four moves the only route is the top one.
  CHECK(plans.size() == 1);
  g.limit = 6;
  std::set<std::vector<std::string>> seqs;
  plans.clear();
  for (;;) {
    auto r = plan_generator_ltl(g, plans, SearchConfig<Grid>{});
    if (r.status != fbi::GenStatus::Found) break;
    seqs.insert(r.trace->action_names);
    plans.push_back(*r.trace);
  }
  CHECK(seqs.size() == plans.size());
  CHECK(plans.size() > 3);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("bfs") == Strategy::BreadthFirst);
  CHECK(parse_strategy("breadth-first") == Strategy::BreadthFirst);
  CHECK(parse_strategy("dfs") == Strategy::DepthFirst);
  CHECK(parse_strategy("best-first") == Strategy::BestFirst);
  CHECK_THROWS(parse_strategy("astar"));
}

TEST_CASE("platformer targets") {
  auto sim = domains::platformer_simulator();
  auto space = domains::platformer::standard_space(sim);
  SearchConfig<domains::platformer::PlatformerSimulator> cfg;
  for (const char* label : {"killed", "avoided"}) {
    auto f = cell_formula(space, bspace::Behaviour{{std::string(label)}});
    auto r = constrained_search(sim, f, cfg);
    REQUIRE(r.status == SearchStatus::Found);
    CHECK(ltl::eval_finite(f, sim.alphabet(), r.trace->props));
    CHECK(bspace::pbehaviour(space, *r.trace).values.front() == bspace::FeatureValue{std::string(label)});
  }
}

}
