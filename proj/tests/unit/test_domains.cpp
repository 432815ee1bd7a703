#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "divplan/domains/registry.hpp"
#include "divplan/fbi/backends.hpp"
#include "divplan/search/generators.hpp"

using namespace divplan;
using namespace divplan::domains;
using urban::LandUse;
using urban::UrbanGrid;

namespace {

// 10x10 grid filled with the given letters in order.
UrbanGrid filled(const std::vector<std::pair<char, int>>& counts) {
  std::string all;
  for (auto [c, n] : counts) all += std::string(n, c);
  REQUIRE(all.size() == 100);
  std::vector<std::string> rows;
  for (int r = 0; r < 10; ++r) rows.push_back(all.substr(r * 10, 10));
  return UrbanGrid::from_rows(rows);
}

// Entropy of the used types, straight from the counts.
double entropy_score(const std::map<char, int>& counts) {
  int used = 0;
  for (auto [c, n] : counts)
    if (c != '.') used += n;
  double h = 0;
  for (auto [c, n] : counts)
    if (c != '.' && n > 0) h -= double(n) / used * std::log(double(n) / used);
  return 100 * h / std::log(5.0);
}

std::map<char, int> letter_counts(const UrbanGrid& g) {
  std::map<char, int> m;
  for (auto u : g.cells()) ++m[static_cast<char>(u)];
  return m;
}

}  // namespace

TEST_SUITE("domains") {

TEST_CASE("urban scores") {
  auto g = filled({{'G', 30}, {'C', 20}, {'F', 10}, {'R', 40}});
  CHECK(urban::sustainability_score(g) == 60.0);
  auto fifths = filled({{'R', 20}, {'O', 20}, {'G', 20}, {'C', 20}, {'F', 20}});
  CHECK(std::abs(urban::diversity_score(fifths) - 100.0) < 1e-9);
  auto halves = filled({{'R', 50}, {'G', 50}});
  CHECK(std::abs(urban::diversity_score(halves) - 100 * std::log(2.0) / std::log(5.0)) < 1e-9);
  CHECK(std::round(urban::diversity_score(halves) * 100) / 100 == doctest::Approx(43.07));
  CHECK(urban::diversity_score(filled({{'O', 100}})) == 0.0);
  CHECK(urban::sustainability_score(filled({{'O', 100}})) == 0.0);
  auto with_empty = filled({{'G', 10}, {'R', 10}, {'.', 80}});
  CHECK(urban::sustainability_score(with_empty) == 50.0);
  CHECK_THROWS_AS(urban::sustainability_score(filled({{'.', 100}})), urban::EmptyGrid);
  CHECK_THROWS_AS(urban::diversity_score(filled({{'.', 100}})), urban::EmptyGrid);
}

TEST_CASE("scores against the count formula, invariant under permutation") {
  std::mt19937 rng(8);
  const std::string letters = "ROGCF.";
  for (int i = 0; i < 200; ++i) {
    std::string all;
    for (int k = 0; k < 100; ++k) all += letters[rng() % (i % 2 ? 6 : 3)];
    if (std::count(all.begin(), all.end(), '.') == 100) continue;
    std::vector<std::string> rows;
    for (int r = 0; r < 10; ++r) rows.push_back(all.substr(r * 10, 10));
    auto g = UrbanGrid::from_rows(rows);
    auto counts = letter_counts(g);
    int used = 100 - counts['.'];
    CHECK(urban::sustainability_score(g) == doctest::Approx(100.0 * (counts['G'] + counts['C'] + counts['F']) / used));
    CHECK(urban::diversity_score(g) == doctest::Approx(entropy_score(counts)).epsilon(1e-12));
    std::shuffle(all.begin(), all.end(), rng);
    for (int r = 0; r < 10; ++r) rows[r] = all.substr(r * 10, 10);
    auto h = UrbanGrid::from_rows(rows);
    CHECK(urban::sustainability_score(h) == urban::sustainability_score(g));
    CHECK(std::abs(urban::diversity_score(h) - urban::diversity_score(g)) < 1e-12);
  }
}

TEST_CASE("conversion step") {
  auto rules = urban::RuleSet::standard();
  auto green = filled({{'G', 100}});
  auto n = urban::urban_step(green, LandUse::Green, rules, 10);
  CHECK(n.count(LandUse::Commercial) == 3);
  CHECK(n.count(LandUse::Facility) == 2);
  CHECK(n.count(LandUse::Green) == 95);
  CHECK(n.rows().front() == "CCCFFGGGGG");
  CHECK(n.counter() == 1);

  auto no_office = filled({{'R', 50}, {'G', 50}});
  auto v = urban::urban_step(no_office, LandUse::Office, rules, 10);
  CHECK(v.cells() == no_office.cells());
  CHECK(v.counter() == 1);

  auto few = filled({{'R', 10}, {'O', 90}});
  auto f = urban::urban_step(few, LandUse::Residential, rules, 10);
  CHECK(f.count(LandUse::Green) == 1);
  CHECK(f.count(LandUse::Commercial) == 0);
  CHECK(f.count(LandUse::Residential) == 9);

  auto spent = UrbanGrid(10, 10, green.cells(), 10);
  CHECK_THROWS_AS(urban::urban_step(spent, LandUse::Green, rules, 10), urban::BudgetExhausted);
}

TEST_CASE("conversion counts match ceil(5%) for every source") {
  std::mt19937 rng(4);
  auto rules = urban::RuleSet::standard();
  const std::string letters = "ROGCF.";
  for (int i = 0; i < 100; ++i) {
    std::string all;
    for (int k = 0; k < 100; ++k) all += letters[rng() % 6];
    std::vector<std::string> rows;
    for (int r = 0; r < 10; ++r) rows.push_back(all.substr(r * 10, 10));
    auto g = UrbanGrid::from_rows(rows);
    for (const auto& rule : rules.rules) {
      auto n = urban::urban_step(g, rule.source, rules, 10);
      int src = g.count(rule.source);
      int expect = int(std::ceil(src * 0.05 - 1e-12));
      int changed = 0;
      for (std::size_t c = 0; c < g.cells().size(); ++c) {
        if (g.cells()[c] == n.cells()[c]) continue;
        ++changed;
        CHECK(g.cells()[c] == rule.source);
        CHECK(std::find(rule.targets.begin(), rule.targets.end(), n.cells()[c]) != rule.targets.end());
      }
      CHECK(changed == expect);
      int first = n.count(rule.targets[0]) - g.count(rule.targets[0]);
      CHECK(first == (expect + 1) / 2);
    }
  }
}

TEST_CASE("urban simulator propositions") {
  auto sim = urban_simulator();
  std::mt19937 rng(1);
  auto g = sim.initial();
  CHECK(std::abs(urban::sustainability_score(g) - 43.75) < 1e-9);
  CHECK(sim.legal_actions(g).size() == 6);
  for (int step = 0; step <= 10; ++step) {
    auto v = sim.propositions(g);
    int s = 0, d = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& name = sim.alphabet().names()[i];
      if (!v[i]) continue;
      if (name.ends_with("_S")) ++s;
      if (name.ends_with("_D")) ++d;
    }
    CHECK(s == 1);
    CHECK(d == 1);
    CHECK(v[sim.alphabet().index_of("l-reached")] == (step == 10));
    CHECK(sim.is_goal(g) == (step == 10));
    if (step == 10) break;
    auto acts = sim.legal_actions(g);
    g = *sim.step(g, acts[rng() % acts.size()]);
  }
  CHECK(sim.legal_actions(g).empty());
  CHECK(sim.parse_action("convert-green") == LandUse::Green);
  CHECK_FALSE(sim.parse_action("convert-nothing").has_value());
}

TEST_CASE("infinite urban heuristic values are safe") {
  auto sim = urban_simulator();
  auto space = urban::standard_space(sim);
  std::vector<bspace::Behaviour> cells;
  for (auto e = bspace::enumerate_cells(space); auto c = e.next();) cells.push_back(*c);
  std::mt19937 rng(6);
  int infinite = 0;
  for (int round = 0; round < 6; ++round) {
    auto g = sim.initial();
    for (int i = 0; i < 8; ++i) g = *sim.step(g, sim.legal_actions(g)[rng() % 6]);
    // Every sustainability bin reachable in the last two steps.
    std::set<std::string> reachable;
    for (auto a : sim.legal_actions(g)) {
      auto g1 = *sim.step(g, a);
      for (auto b : sim.legal_actions(g1)) reachable.insert(sim.bins().classify(urban::sustainability_score(*sim.step(g1, b))));
    }
    for (const auto& c : cells) {
      auto h = sim.cell_heuristic(c)(g);
      const auto& s = std::get<std::string>(c.values[0]);
      if (!std::isinf(h)) continue;
      ++infinite;
      bool excused = s == bspace::kHorizonReached || std::get<std::string>(c.values[1]) == bspace::kHorizonReached;
      CHECK((excused || !reachable.count(s)));
    }
  }
  CHECK(infinite > 0);
}

TEST_CASE("urban trace binning") {
  auto sim = urban_simulator();
  auto space = urban::standard_space(sim);
  search::SearchConfig<urban::UrbanSimulator> cfg;
  cfg.strategy = search::Strategy::DepthFirst;
  auto r = search::constrained_search(sim, ltl::make_true(), cfg);
  REQUIRE(r.trace);
  CHECK(r.trace->size() == 10);
  auto b = bspace::pbehaviour(space, *r.trace);
  const auto& last = r.trace->final_state();
  CHECK(b.values[0] == bspace::FeatureValue{sim.bins().classify(urban::sustainability_score(last))});
  CHECK(b.values[1] == bspace::FeatureValue{sim.bins().classify(urban::diversity_score(last))});
  auto f = search::cell_formula(space, b);
  CHECK(ltl::eval_finite(f, sim.alphabet(), r.trace->props));
}

TEST_CASE("grid JSON roundtrip") {
  auto g = urban_simulator().initial();
  auto back = urban::grid_from_json(nlohmann::json::parse(urban::grid_to_json(g).dump()));
  CHECK(back == g);
  CHECK_THROWS(urban::grid_from_json(nlohmann::json::parse(R"({"rows": ["RG", "R"]})")));
  CHECK_THROWS(urban::grid_from_json(nlohmann::json::parse(R"({"rows": ["RX"]})")));
  CHECK(urban::render(g, false).size() == 10 * 21);
  CHECK(urban::render(g, true).find("\x1b[") != std::string::npos);
}

TEST_CASE("platformer level parsing") {
  auto lv = platformer::Level::parse("S.E\n###\n");
  CHECK(lv.width() == 3);
  CHECK(lv.height() == 2);
  CHECK(lv.solid(0, 1));
  CHECK_FALSE(lv.solid(1, 0));
  CHECK(lv.solid(-1, 0));
  CHECK(lv.solid(0, 2));
  CHECK_THROWS(platformer::Level::parse("S..\n###\n"));
  CHECK_THROWS(platformer::Level::parse("S.EE\n####\n"));
  CHECK_THROWS(platformer::Level::parse("S.E\n##\n"));
  CHECK_THROWS(platformer::Level::parse("S.X\n###\n"));
}

TEST_CASE("platformer contact rules") {
  using platformer::Move;
  auto lv = platformer::Level::parse("S.E\n###\n");
  auto s = platformer::initial_state(lv);
  CHECK_THROWS_AS(platformer::platformer_step(lv, s, Move::Right), platformer::AvatarDied);
  auto s1 = platformer::platformer_step(lv, s, Move::Noop);
  CHECK(s1.enemy_x == 1);
  CHECK_THROWS_AS(platformer::platformer_step(lv, s1, Move::Noop), platformer::AvatarDied);
  platformer::PlatformerSimulator sim(lv);
  CHECK_FALSE(sim.step(s1, Move::Noop).has_value());

  // The map edge acts as a ceiling.
  auto jumped = platformer::platformer_step(lv, s, Move::Jump);
  CHECK(jumped.y == 0);
  CHECK(jumped.vy == 0);
}

TEST_CASE("platformer stomp and avoidance on the bundled level") {
  auto sim = platformer_simulator();
  auto space = platformer::standard_space(sim);
  search::SearchConfig<platformer::PlatformerSimulator> cfg;
  auto killed = search::constrained_search(sim, ltl::parse("FG killed"), cfg);
  REQUIRE(killed.trace);
  const auto& st = killed.trace->states;
  auto kill = std::find_if(st.begin(), st.end(), [](const auto& s) { return !s.enemy_alive; });
  REQUIRE(kill != st.end());
  // The avatar came down onto the enemy's cell.
  CHECK(kill->y == (kill - 1)->y + 1);
  CHECK(kill->y == sim.level().enemy_y());
  for (auto it = kill; it != st.end(); ++it) CHECK_FALSE(it->enemy_alive);
  CHECK(bspace::pbehaviour(space, *killed.trace).values[0] == bspace::FeatureValue{std::string("killed")});

  auto avoided = search::constrained_search(sim, ltl::parse("G avoided"), cfg);
  REQUIRE(avoided.trace);
  for (const auto& s : avoided.trace->states) CHECK(s.enemy_alive);
  CHECK(platformer::render_path(sim.level(), avoided.trace->states).find('*') != std::string::npos);
}

TEST_CASE("platformer: killed and avoided partition random runs") {
  using platformer::Move;
  auto sim = platformer_simulator();
  auto space = platformer::standard_space(sim);
  std::mt19937 rng(12);
  const Move moves[] = {Move::Left, Move::Right, Move::Jump, Move::Noop};
  for (int run = 0; run < 300; ++run) {
    platformer::PlatformerTrace t;
    t.states.push_back(sim.initial());
    t.props.steps.push_back(sim.propositions(t.states.back()));
    for (int i = 0; i < 40; ++i) {
      auto m = moves[rng() % 4];
      auto n = sim.step(t.states.back(), m);
      if (!n) break;
      t.actions.push_back(m);
      t.action_names.push_back(sim.action_name(m));
      t.states.push_back(*n);
      t.props.steps.push_back(sim.propositions(*n));
    }
    for (const auto& v : t.props.steps) CHECK(v[0] != v[1]);
    auto b = std::get<std::string>(bspace::pbehaviour(space, t).values[0]);
    CHECK((b == "killed") == !t.final_state().enemy_alive);
  }
}

TEST_CASE("platformer state key ignores the tick") {
  auto sim = platformer_simulator();
  auto a = sim.initial(), b = a;
  b.tick = 7;
  CHECK(sim.state_key(a) == sim.state_key(b));
  b.enemy_x += 1;
  CHECK(sim.state_key(a) != sim.state_key(b));
}

TEST_CASE("story world") {
  auto story = story_pack();
  const auto& keys = std::get<bspace::GoalAssignment>(story.feature.expression).keys;
  CHECK(keys.size() == 20);
  for (auto k : keys) {
    const auto& f = story.problem.fluent(k);
    CHECK(f.name == "married-to");
    CHECK(f.args[0] != f.args[1]);
  }
  satplan::SatSpace space({story.feature});
  auto r = fbi::fbi_sat(3, space, story.problem, {0, 20});
  REQUIRE(r.plans.size() == 3);
  CHECK(r.bdc == 3);
  for (const auto& t : r.plans) {
    CHECK_NOTHROW(core::validate_plan(story.problem, t.plan));
    auto bits = std::get<std::vector<bool>>(bspace::pbehaviour(space, t).values[0]);
    CHECK(std::count(bits.begin(), bits.end(), true) >= 1);
  }
}

TEST_CASE("registry") {
  CHECK(declarative_domains().size() == 4);
  CHECK(simulator_domains() == std::vector<std::string>{"urban", "platformer"});
  for (const auto& name : declarative_domains()) CHECK_NOTHROW(declarative_problem(name));
  CHECK_THROWS(declarative_problem("nope"));
  CHECK_THROWS(data_file("nope.txt"));
  CHECK(data_file("platformer/level1.txt").find('S') != std::string::npos);
}

}
