// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "divplan/cli/app.hpp"
#include "divplan/domains/registry.hpp"
#include "divplan/fbi/backends.hpp"
#include "ltl_oracle.hpp"

using namespace divplan;
using json = nlohmann::json;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Timed {
  int code = 0;
  std::string out;
  double seconds = 0;
};

Timed run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  auto t0 = std::chrono::steady_clock::now();
  int code = cli::run(args, out, err);
  std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
  return {code, out.str(), dt.count()};
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << std::fixed << x;
  return s.str();
}

std::map<std::string, std::string> first_reports;

// ---- criterion 1
Outcome story_sat() {
  Outcome o;
  auto r = run_cli({"plan", "--domain", "story", "--backend", "sat", "--k", "3"});
  first_reports["story"] = r.out;
  o.require(r.code == 0, "exit code " + std::to_string(r.code));
  if (!o.pass) return o;
  auto rep = json::parse(r.out);
  auto story = domains::story_pack();
  auto gnd = story.problem.goal().fluents();
  std::set<std::vector<bool>> endings;
  for (const auto& p : rep["plans"]) {
    core::Plan plan;
    for (const auto& a : p["actions"]) plan.actions.push_back(*story.problem.find_action(a.get<std::string>()));
    auto trace = core::validate_plan(story.problem, plan);
    std::vector<bool> bits;
    for (auto f : gnd) bits.push_back(trace.final_state().test(f));
    endings.insert(bits);
  }
  o.require(rep["plans"].size() == 3, "plan count " + std::to_string(rep["plans"].size()));
  o.require(endings.size() == 3, "endings not pairwise distinct");
  o.require(rep["bdc"] == 3, "bdc " + rep["bdc"].dump());
  o.require(r.seconds <= 60, "took " + fmt(r.seconds) + " s");
  o.detail = o.pass ? "3 plans, 3 endings, " + fmt(r.seconds) + " s" : o.detail;
  return o;
}

// ---- criterion 2
Outcome platformer_search() {
  Outcome o;
  auto r = run_cli({"plan", "--domain", "platformer", "--backend", "search", "--k", "2"});
  first_reports["platformer"] = r.out;
  o.require(r.code == 0, "exit code " + std::to_string(r.code));
  if (!o.pass) return o;
  auto rep = json::parse(r.out);
  auto sim = domains::platformer_simulator();
  int killed = 0, avoided = 0;
  for (const auto& p : rep["plans"]) {
    // Replay and read the enemy's fate off every visited state.
    auto s = sim.initial();
    bool alive_throughout = s.enemy_alive;
    for (const auto& a : p["actions"]) {
      auto n = sim.step(s, *domains::platformer::parse_move(a.get<std::string>()));
      o.require(n.has_value(), "replayed plan dies");
      if (!n) return o;
      s = *n;
      alive_throughout = alive_throughout && s.enemy_alive;
    }
    o.require(sim.is_goal(s), "replayed plan misses the exit");
    if (!s.enemy_alive) ++killed;
    if (alive_throughout) ++avoided;
    o.require(p["behaviour"][0] == (alive_throughout ? "avoided" : "killed"), "behaviour label disagrees with replay");
  }
  o.require(rep["plans"].size() == 2, "plan count " + std::to_string(rep["plans"].size()));
  o.require(killed == 1 && avoided == 1, "killed " + std::to_string(killed) + ", avoided " + std::to_string(avoided));
  o.require(rep["bdc"] == 2, "bdc " + rep["bdc"].dump());
  o.require(r.seconds <= 30, "took " + fmt(r.seconds) + " s");
  o.detail = o.pass ? "one killed, one avoided, " + fmt(r.seconds) + " s" : o.detail;
  return o;
}

// Scores from letter counts, written independently of the library.
double oracle_sustainability(const std::vector<std::string>& rows) {
  int used = 0, good = 0;
  for (const auto& r : rows)
    for (char c : r) {
      if (c != '.') ++used;
      if (c == 'G' || c == 'C' || c == 'F') ++good;
    }
  return 100.0 * good / used;
}

double oracle_diversity(const std::vector<std::string>& rows) {
  std::map<char, int> n;
  int used = 0;
  for (const auto& r : rows)
    for (char c : r)
      if (c != '.') ++n[c], ++used;
  double h = 0;
  for (auto [c, k] : n) h -= double(k) / used * std::log(double(k) / used);
  return 100 * h / std::log(5.0);
}

std::string oracle_bin(double s) {
  if (s <= 20) return "VL";
  if (s <= 30) return "L";
  if (s <= 50) return "M";
  if (s <= 70) return "H";
  if (s <= 90) return "VH";
  return "ID";
}

// ---- criterion 3
Outcome urban_search() {
  Outcome o;
  auto r = run_cli({"plan", "--domain", "urban", "--backend", "search", "--k", "2"});
  first_reports["urban"] = r.out;
  o.require(r.code == 0, "exit code " + std::to_string(r.code));
  if (!o.pass) return o;
  auto rep = json::parse(r.out);
  auto sim = domains::urban_simulator();
  std::set<std::pair<std::string, std::string>> tuples;
  for (const auto& p : rep["plans"]) {
    o.require(p["length"] == 10 && p["actions"].size() == 10, "plan length " + p["length"].dump());
    auto g = sim.initial();
    for (const auto& a : p["actions"]) g = *sim.step(g, *sim.parse_action(a.get<std::string>()));
    auto rows = g.rows();
    o.require(rows == p["final_grid"].get<std::vector<std::string>>(), "final grid does not replay");
    std::pair<std::string, std::string> t{oracle_bin(oracle_sustainability(rows)), oracle_bin(oracle_diversity(rows))};
    o.require(json(std::vector<std::string>{t.first, t.second}) == p["behaviour"], "behaviour disagrees with the grid");
    tuples.insert(t);
  }
  o.require(rep["plans"].size() == 2, "plan count " + std::to_string(rep["plans"].size()));
  o.require(tuples.size() == 2, "bin tuples not distinct");
  o.require(r.seconds <= 120, "took " + fmt(r.seconds) + " s");
  o.detail = o.pass ? "two length-10 plans in distinct bins, " + fmt(r.seconds) + " s" : o.detail;
  return o;
}

// ---- criterion 4
// Exact maximum number of distinct endings over plan subsets of size <= k,
// by branch and bound over the enumerated plans.
std::size_t brute_max(const std::vector<std::vector<bool>>& endings, std::size_t k) {
  std::size_t best = 0;
  std::vector<std::vector<bool>> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    std::set<std::vector<bool>> distinct(pick.begin(), pick.end());
    best = std::max(best, distinct.size());
    if (pick.size() == k) return;
    std::set<std::vector<bool>> rest(endings.begin() + static_cast<long>(from), endings.end());
    for (const auto& e : distinct) rest.erase(e);
    if (distinct.size() + std::min(k - pick.size(), rest.size()) <= best) return;
    for (std::size_t i = from; i < endings.size(); ++i) {
      pick.push_back(endings[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return best;
}

Outcome oracle_maximality() {
  Outcome o;
  int instances = 0, checks = 0;
  for (const char* name : {"toggle", "switches", "story-tiny"}) {
    auto p = domains::declarative_problem(name);
    o.require(p.actions().size() <= 5, std::string(name) + " has too many ground actions");
    auto gnd = p.goal().fluents();
    std::vector<std::vector<bool>> endings;
    for (const auto& plan : core::enumerate_plans(p, 6)) {
      auto t = core::validate_plan(p, plan);
      std::vector<bool> bits;
      for (auto f : gnd) bits.push_back(t.final_state().test(f));
      endings.push_back(bits);
    }
    satplan::SatSpace space({bspace::goal_endings_feature(p)});
    std::size_t bs = space.size();
    for (std::size_t k : {std::size_t(1), std::size_t(2), std::size_t(3), bs + 1}) {
      auto r = fbi::fbi_sat(k, space, p, {0, 6});
      auto want = brute_max(endings, k);
      o.require(r.bdc == want, std::string(name) + " k=" + std::to_string(k) + ": fbi " + std::to_string(r.bdc) +
                                   ", maximum " + std::to_string(want));
      ++checks;
    }
    ++instances;
  }
  o.detail = o.pass ? std::to_string(instances) + " instances, " + std::to_string(checks) + " (instance, k) pairs"
                    : o.detail;
  return o;
}

// ---- criterion 5
Outcome satplan_validity() {
  Outcome o;
  int plans = 0;
  for (const auto& name : domains::declarative_domains()) {
    auto p = domains::declarative_problem(name);
    satplan::SatSpace space({bspace::goal_endings_feature(p)});
    for (std::size_t k : {1, 3, 6}) {
      auto r = fbi::fbi_sat(k, space, p, {0, name == "story" ? 8 : 6});
      for (const auto& t : r.plans) {
        ++plans;
        try {
          o.require(core::validate_plan(p, t.plan) == t, name + ": decoded states differ from the replay");
        } catch (const core::PlanError& e) {
          o.require(false, name + ": " + e.what());
        }
      }
    }
    for (int h = 0; h <= 6; ++h) {
      auto task = satplan::encode(p, h);
      for (int i = 0; i < 5; ++i) {
        auto m = satplan::solve(task);
        if (!m) break;
        auto t = satplan::decode(*m, task);
        ++plans;
        try {
          core::validate_plan(p, t.plan);
        } catch (const core::PlanError& e) {
          o.require(false, name + " horizon " + std::to_string(h) + ": " + e.what());
        }
        satplan::forbid_plan(task, t.plan);
      }
    }
  }
  o.detail = o.pass ? std::to_string(plans) + " plans validated" : o.detail;
  return o;
}

// ---- criterion 6
Outcome ltl_exhaustive() {
  Outcome o;
  auto tally = oracle::depth3_exhaustive(5);
  o.require(tally.mismatches == 0, std::to_string(tally.mismatches) + " mismatches");
  ltl::Alphabet single({"p"});
  auto fg = ltl::parse("FG p");
  int fg_checked = 0;
  for (std::uint32_t m = 0; m < 64; ++m) {
    ltl::PropTrace t;
    for (int i = 0; i < 6; ++i) t.steps.push_back({bool(m >> i & 1)});
    o.require(ltl::eval_finite(fg, single, t) == t.steps.back()[0], "FG p differs from p at the last state");
    ++fg_checked;
  }
  o.detail = o.pass ? std::to_string(tally.checked) + " evaluations, " + std::to_string(fg_checked) + " FG traces"
                    : o.detail;
  return o;
}

// ---- criterion 7
Outcome monitor_sound() {
  Outcome o;
  auto tally = oracle::monitor_soundness(oracle::bundled_shapes(), 4, 4);
  o.require(tally.checked > 0, "no definite verdicts");
  o.require(tally.mismatches == 0, std::to_string(tally.mismatches) + " violations");
  o.detail = o.pass ? "0 violations in " + std::to_string(tally.checked) + " extensions" : o.detail;
  return o;
}

// ---- criterion 8
Outcome scores() {
  Outcome o;
  auto grid = [](const std::vector<std::pair<char, int>>& counts) {
    std::string all;
    for (auto [c, n] : counts) all += std::string(n, c);
    std::vector<std::string> rows;
    for (int r = 0; r < 10; ++r) rows.push_back(all.substr(r * 10, 10));
    return domains::urban::UrbanGrid::from_rows(rows);
  };
  double d_fifths = domains::urban::diversity_score(grid({{'R', 20}, {'O', 20}, {'G', 20}, {'C', 20}, {'F', 20}}));
  double d_halves = domains::urban::diversity_score(grid({{'R', 50}, {'G', 50}}));
  double s = domains::urban::sustainability_score(grid({{'G', 30}, {'C', 20}, {'F', 10}, {'R', 40}}));
  o.require(std::abs(d_fifths - 100) <= 1e-9, "equal fifths gave " + std::to_string(d_fifths));
  o.require(std::abs(d_halves - 100 * std::log(2.0) / std::log(5.0)) <= 1e-9, "halves gave " + std::to_string(d_halves));
  o.require(s == 60.0, "sustainability gave " + std::to_string(s));
  o.detail = o.pass ? "100, " + fmt(d_halves) + ", 60" : o.detail;
  return o;
}

// ---- criterion 9
Outcome determinism() {
  Outcome o;
  const std::map<std::string, std::vector<std::string>> args = {
      {"story", {"plan", "--domain", "story", "--backend", "sat", "--k", "3"}},
      {"platformer", {"plan", "--domain", "platformer", "--backend", "search", "--k", "2"}},
      {"urban", {"plan", "--domain", "urban", "--backend", "search", "--k", "2"}}};
  for (const auto& [name, a] : args) {
    std::string first = first_reports.count(name) ? first_reports[name] : run_cli(a).out;
    auto second = run_cli(a).out;
    o.require(!first.empty(), name + ": empty report");
    o.require(first == second, name + ": reports differ");
  }
  o.detail = o.pass ? "story, platformer, urban byte-identical" : o.detail;
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1 story sat k=3", story_sat},
      {"AC2 platformer search k=2", platformer_search},
      {"AC3 urban search k=2", urban_search},
      {"AC4 fbi maximality vs brute force", oracle_maximality},
      {"AC5 satplan plans validate", satplan_validity},
      {"AC6 LTLf evaluation vs definition", ltl_exhaustive},
      {"AC7 monitor soundness", monitor_sound},
      {"AC8 urban scores", scores},
      {"AC9 deterministic reports", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " (" << o.detail << ") [" << fmt(dt.count()) << " s]"
              << std::endl;
    failed += !o.pass;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << std::endl;
  return failed ? 1 : 0;
}
