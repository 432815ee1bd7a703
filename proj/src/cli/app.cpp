#include "divplan/cli/app.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "divplan/cli/space_config.hpp"
#include "divplan/core/io.hpp"
#include "divplan/domains/registry.hpp"
#include "divplan/fbi/backends.hpp"
#include "divplan/pddl/parser.hpp"
#include "divplan/sat/dimacs.hpp"

namespace divplan::cli {

namespace {

using json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write '" + path + "'");
  f << text;
}

struct Source {
  std::string domain;
  std::string pddl_domain;
  std::string pddl_problem;
  std::string problem_json;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--domain", domain, "bundled domain: story, story-tiny, toggle, switches, urban, platformer");
    cmd->add_option("--pddl-domain", pddl_domain, "PDDL domain file");
    cmd->add_option("--pddl-problem", pddl_problem, "PDDL problem file");
    cmd->add_option("--problem", problem_json, "ground problem JSON file");
  }

  bool is_simulator() const {
    const auto& sims = domains::simulator_domains();
    return std::find(sims.begin(), sims.end(), domain) != sims.end();
  }

  std::string label() const {
    if (!domain.empty()) return domain;
    if (!pddl_domain.empty()) return "pddl";
    return "ground-json";
  }

  void check() const {
    int n = !domain.empty() + (!pddl_domain.empty() || !pddl_problem.empty()) + !problem_json.empty();
    if (n != 1) throw ConfigError("give exactly one problem source: --domain, --pddl-domain/--pddl-problem or --problem");
    if (pddl_domain.empty() != pddl_problem.empty())
      throw ConfigError("--pddl-domain and --pddl-problem must be given together");
    if (!domain.empty() && !is_simulator()) {
      const auto& decl = domains::declarative_domains();
      if (std::find(decl.begin(), decl.end(), domain) == decl.end())
        throw ConfigError("unknown domain '" + domain + "'");
    }
  }

  core::GroundProblem problem() const {
    if (is_simulator()) throw ConfigError("domain '" + domain + "' is a simulator, not a declarative problem");
    if (!domain.empty()) return domains::declarative_problem(domain);
    if (!pddl_domain.empty()) return domains::ground_pddl(read_file(pddl_domain), read_file(pddl_problem));
    try {
      return core::problem_from_json(nlohmann::json::parse(read_file(problem_json)));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed ground-problem JSON: ") + e.what());
    }
  }
};

struct PlanOptions {
  Source source;
  std::string backend;
  std::string space;
  std::string out;
  std::string strategy;
  int k = 1;
  int horizon_min = 0;
  int horizon_max = 20;
  std::uint64_t node_budget = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  std::uint64_t conflict_limit = 0;
  bool no_pruning = false;
};

json behaviour_json(const std::vector<bspace::FeatureDomain>& domains, const bspace::Behaviour& b) {
  json out = json::array();
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    if (const auto* s = std::get_if<std::string>(&b.values[i])) {
      out.push_back(*s);
    } else {
      const auto& bits = std::get<std::vector<bool>>(b.values[i]);
      json keys = json::array();
      for (std::size_t j = 0; j < bits.size(); ++j)
        if (bits[j]) keys.push_back(domains[i].items()[j]);
      out.push_back(keys);
    }
  }
  return out;
}

template <class Trace>
json space_json(const bspace::BehaviourSpace<Trace>& space) {
  json features = json::array();
  for (const auto& f : space.features()) {
    json jf{{"name", f.name}};
    if (f.domain.is_assignment()) {
      jf["kind"] = "assignment";
      jf["keys"] = f.domain.items();
    } else {
      jf["kind"] = "labels";
      jf["values"] = f.domain.items();
    }
    features.push_back(jf);
  }
  auto size = space.size();
  return {{"features", features}, {"size", size == UINT64_MAX ? json("overflow") : json(size)}};
}

template <class Trace, class PerPlan>
json report_core(const PlanOptions& o, const std::string& backend, const bspace::BehaviourSpace<Trace>& space,
                 const fbi::FbiResult<Trace>& r, PerPlan&& per_plan) {
  json rep;
  rep["schema_version"] = kReportSchemaVersion;
  rep["domain"] = o.source.label();
  rep["backend"] = backend;
  rep["k"] = o.k;
  rep["seed"] = o.seed;
  rep["space"] = space_json(space);
  auto domains = space.domains();
  json plans = json::array();
  for (std::size_t i = 0; i < r.plans.size(); ++i) {
    json p;
    p["index"] = i;
    p["loop"] = r.loop[i];
    p["behaviour"] = behaviour_json(domains, r.behaviours[i]);
    per_plan(p, r.plans[i]);
    plans.push_back(p);
  }
  rep["bdc"] = r.bdc;
  rep["termination"] = fbi::to_string(r.termination);
  rep["plans"] = plans;
  return rep;
}

SpaceSpec load_space(const PlanOptions& o) {
  if (!o.space.empty()) {
    try {
      return parse_space(nlohmann::json::parse(read_file(o.space)));
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("malformed behaviour-space config: ") + e.what());
    }
  }
  std::string name = o.source.is_simulator() ? o.source.domain : "story";
  return parse_space(nlohmann::json::parse(domains::data_file("spaces/" + name + ".json")));
}

json plan_sat(const PlanOptions& o) {
  auto problem = o.source.problem();
  auto space = build_plan_space(load_space(o), problem);
  satplan::SolveConfig sc;
  sc.solver.seed = static_cast<std::uint32_t>(o.seed);
  sc.solver.conflict_limit = o.conflict_limit;
  if (const char* ext = std::getenv("DIVPLAN_EXTERNAL_SAT")) sc.external_command = ext;
  satplan::SatGenStats stats;
  auto r = fbi::fbi_sat(static_cast<std::size_t>(o.k), space, problem, {o.horizon_min, o.horizon_max}, sc, &stats);
  auto gnd = problem.goal().fluents();
  auto rep = report_core(o, "sat", space, r, [&](json& p, const core::PlanTrace& t) {
    p["length"] = t.plan.size();
    p["cost"] = core::plan_cost(problem, t.plan);
    p["actions"] = core::action_names(problem, t.plan);
    json finals = json::array();
    for (auto f : gnd)
      if (t.final_state().test(f)) finals.push_back(problem.fluent_name(f));
    p["final_goal_fluents"] = finals;
  });
  rep["config"] = {{"horizon_min", o.horizon_min}, {"horizon_max", o.horizon_max},
                   {"conflict_limit", o.conflict_limit}};
  rep["stats"] = {{"solver_calls", stats.solver_calls}, {"sat_answers", stats.sat_answers},
                  {"unsat_answers", stats.unsat_answers}, {"conflicts", stats.conflicts},
                  {"decisions", stats.decisions}};
  return rep;
}

template <class Sim>
search::LtlGeneratorConfig<Sim> search_config(const PlanOptions& o, search::Strategy default_strategy,
                                              std::uint64_t default_budget) {
  search::LtlGeneratorConfig<Sim> cfg;
  cfg.search.strategy = o.strategy.empty() ? default_strategy : search::parse_strategy(o.strategy);
  cfg.search.node_budget = o.node_budget ? o.node_budget : default_budget;
  cfg.search.seed = o.seed;
  cfg.search.monitor_pruning = !o.no_pruning;
  cfg.jobs = o.jobs;
  return cfg;
}

template <class Sim>
void add_search_sections(json& rep, const search::LtlGeneratorConfig<Sim>& cfg, const search::LtlGenStats& cells,
                         const search::SearchStats& padding) {
  rep["config"] = {{"strategy", search::to_string(cfg.search.strategy)},
                   {"node_budget", cfg.search.node_budget},
                   {"monitor_pruning", cfg.search.monitor_pruning}};
  rep["stats"] = {{"behaviour_search", search::to_json(cells)}, {"padding_search", search::to_json(padding)}};
}

json plan_urban(const PlanOptions& o) {
  using namespace domains::urban;
  auto spec = load_space(o);
  auto base = domains::urban_simulator();
  UrbanSimulator sim(base.initial(), base.rules(), kDefaultBudget, space_bins(spec));
  auto space = build_sim_space(spec, sim,
                               {{"sustainability", [](const UrbanGrid& g) { return sustainability_score(g); }},
                                {"diversity", [](const UrbanGrid& g) { return diversity_score(g); }}});
  auto cfg = search_config<UrbanSimulator>(o, search::Strategy::BestFirst, 20000);
  bool standard = spec.features.size() == 2 && spec.features[0].kind == "categorical-score" &&
                  spec.features[0].score == "sustainability" && spec.features[0].suffix == "_S" &&
                  spec.features[1].kind == "categorical-score" && spec.features[1].score == "diversity" &&
                  spec.features[1].suffix == "_D";
  if (standard) cfg.cell_heuristic = [&sim](const bspace::Behaviour& c) { return sim.cell_heuristic(c); };
  search::LtlGenStats cells;
  search::SearchStats padding;
  auto r = fbi::fbi_search(static_cast<std::size_t>(o.k), sim, space, cfg, &cells, &padding);
  auto rep = report_core(o, "search", space, r, [&](json& p, const UrbanTrace& t) {
    p["length"] = t.size();
    p["actions"] = t.action_names;
    p["final_grid"] = t.final_state().rows();
    p["final_scores"] = {{"sustainability", sustainability_score(t.final_state())},
                         {"diversity", diversity_score(t.final_state())}};
  });
  rep["initial_grid"] = sim.initial().rows();
  rep["initial_scores"] = {{"sustainability", sustainability_score(sim.initial())},
                           {"diversity", diversity_score(sim.initial())}};
  add_search_sections(rep, cfg, cells, padding);
  return rep;
}

json plan_platformer(const PlanOptions& o) {
  using namespace domains::platformer;
  auto spec = load_space(o);
  auto sim = domains::platformer_simulator();
  auto space = build_sim_space<PlatformerSimulator>(spec, sim, {});
  auto cfg = search_config<PlatformerSimulator>(o, search::Strategy::BreadthFirst, 1'000'000);
  search::LtlGenStats cells;
  search::SearchStats padding;
  auto r = fbi::fbi_search(static_cast<std::size_t>(o.k), sim, space, cfg, &cells, &padding);
  auto rep = report_core(o, "search", space, r, [&](json& p, const PlatformerTrace& t) {
    p["length"] = t.size();
    p["actions"] = t.action_names;
    json path = json::array();
    for (const auto& s : t.states) path.push_back({s.x, s.y});
    p["path"] = path;
    p["enemy_killed"] = !t.final_state().enemy_alive;
  });
  std::vector<std::string> level;
  const auto& lv = sim.level();
  for (int y = 0; y < lv.height(); ++y) {
    auto row = lv.row(y);
    if (y == lv.start_y()) row[lv.start_x()] = 'S';
    if (y == lv.enemy_y()) row[lv.enemy_x()] = 'E';
    level.push_back(row);
  }
  rep["level"] = level;
  add_search_sections(rep, cfg, cells, padding);
  return rep;
}

int cmd_plan(const PlanOptions& o, std::ostream& out, std::ostream& err) {
  o.source.check();
  if (o.k < 1) throw ConfigError("--k must be at least 1");
  if (o.horizon_min < 0 || o.horizon_max < o.horizon_min)
    throw ConfigError("need 0 <= --horizon-min <= --horizon-max");
  if (o.jobs < 1) throw ConfigError("--jobs must be at least 1");
  std::string backend = o.backend.empty() ? (o.source.is_simulator() ? "search" : "sat") : o.backend;
  if (backend != "sat" && backend != "search") throw ConfigError("unknown backend '" + backend + "'");
  if (backend == "sat" && o.source.is_simulator())
    throw ConfigError("the sat backend needs a declarative problem; '" + o.source.domain + "' is a simulator");
  if (backend == "search" && !o.source.is_simulator())
    throw ConfigError("the search backend needs a simulator domain (urban or platformer)");

  json rep;
  if (backend == "sat")
    rep = plan_sat(o);
  else if (o.source.domain == "urban")
    rep = plan_urban(o);
  else
    rep = plan_platformer(o);
  write_output(o.out, rep.dump(2) + "\n", out);
  std::size_t n = rep["plans"].size();
  err << "found " << n << " plan(s), bdc " << rep["bdc"].get<std::size_t>() << ", "
      << rep["termination"].get<std::string>() << "\n";
  return n == 0 ? kExitNoPlans : kExitOk;
}

int cmd_validate(const Source& src, const std::string& plan_path, std::ostream& out, std::ostream& err) {
  src.check();
  auto problem = src.problem();
  core::Plan plan;
  try {
    plan = core::parse_plan_text(problem, read_file(plan_path));
  } catch (const core::ProblemError& e) {
    throw ConfigError(e.what());
  }
  try {
    auto trace = core::validate_plan(problem, plan);
    auto names = core::action_names(problem, plan);
    for (std::size_t i = 0; i < trace.states.size(); ++i) {
      if (i > 0) out << "  " << names[i - 1] << "\n";
      out << "s" << i << ":";
      for (auto f : trace.states[i].true_fluents()) out << " " << problem.fluent_name(f);
      out << "\n";
    }
    out << "valid plan of length " << plan.size() << ", cost " << core::plan_cost(problem, plan) << "\n";
    return kExitOk;
  } catch (const core::PlanError& e) {
    err << "invalid plan: " << e.what() << "\n";
    return kExitNoPlans;
  }
}

int cmd_render(const std::string& report_path, const std::string& what, bool ansi, std::ostream& out) {
  nlohmann::json rep;
  try {
    rep = nlohmann::json::parse(read_file(report_path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
  out << render_report(rep, what, ansi);
  return kExitOk;
}

int cmd_ground(const Source& src, const std::string& path, std::ostream& out) {
  src.check();
  write_output(path, core::to_json(src.problem()).dump(2) + "\n", out);
  return kExitOk;
}

int cmd_dimacs(const Source& src, int horizon, const std::string& path, std::ostream& out) {
  src.check();
  if (horizon < 0) throw ConfigError("--horizon must be non-negative");
  auto problem = src.problem();
  auto task = satplan::encode(problem, horizon);
  std::ostringstream cnf;
  sat::write_dimacs(cnf, task.cnf);
  write_output(path, cnf.str(), out);
  if (!path.empty() && path != "-")
    write_output(path + ".varmap.json", satplan::varmap_json(task, problem).dump(2) + "\n", out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Behaviour planning: diverse plans over a behaviour space", "divplan");
  app.require_subcommand(1);

  PlanOptions po;
  auto* plan = app.add_subcommand("plan", "generate up to k behaviourally diverse plans");
  po.source.add_options(plan);
  plan->add_option("--backend", po.backend, "sat or search (default: by problem source)");
  plan->add_option("--space", po.space, "behaviour-space config JSON");
  plan->add_option("--k", po.k, "number of plans");
  plan->add_option("--horizon-min", po.horizon_min, "sat: shortest horizon tried");
  plan->add_option("--horizon-max", po.horizon_max, "sat: longest horizon tried");
  plan->add_option("--conflict-limit", po.conflict_limit, "sat: conflicts per solver call (0 = none)");
  plan->add_option("--node-budget", po.node_budget, "search: expansions per cell search");
  plan->add_option("--strategy", po.strategy, "search: bfs, dfs or best-first");
  plan->add_flag("--no-pruning", po.no_pruning, "search: disable monitor pruning");
  plan->add_option("--seed", po.seed, "random seed");
  plan->add_option("--jobs", po.jobs, "search: parallel cell searches");
  plan->add_option("--out", po.out, "report path (default stdout)");

  Source vs;
  std::string plan_file;
  auto* validate = app.add_subcommand("validate", "check a plan against a declarative problem");
  vs.add_options(validate);
  validate->add_option("--plan", plan_file, "plan file, one action per line")->required();

  std::string report_file, what;
  bool ansi = false;
  auto* render = app.add_subcommand("render", "text rendering of a plan report");
  render->add_option("report", report_file, "report JSON")->required();
  render->add_option("--what", what, "urban-grid, platformer or story-summary (default: by domain)");
  render->add_flag("--ansi", ansi, "colour output");

  Source gs;
  std::string ground_out;
  auto* ground = app.add_subcommand("ground", "print the ground problem as JSON");
  gs.add_options(ground);
  ground->add_option("--out", ground_out, "output path (default stdout)");

  Source ds;
  int horizon = 0;
  std::string dimacs_out;
  auto* dimacs = app.add_subcommand("dimacs", "export the CNF for one horizon (plus a .varmap.json sidecar)");
  ds.add_options(dimacs);
  dimacs->add_option("--horizon", horizon, "plan length")->required();
  dimacs->add_option("--out", dimacs_out, "output path (default stdout)");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*plan) return cmd_plan(po, out, err);
    if (*validate) return cmd_validate(vs, plan_file, out, err);
    if (*render) return cmd_render(report_file, what, ansi, out);
    if (*ground) return cmd_ground(gs, ground_out, out);
    if (*dimacs) return cmd_dimacs(ds, horizon, dimacs_out, out);
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace divplan::cli
