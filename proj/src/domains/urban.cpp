#include "divplan/domains/urban.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace divplan::domains::urban {

LandUse land_use_from_letter(char c) {
  switch (c) {
    case 'R': return LandUse::Residential;
    case 'O': return LandUse::Office;
    case 'G': return LandUse::Green;
    case 'C': return LandUse::Commercial;
    case 'F': return LandUse::Facility;
    case '.': return LandUse::Empty;
  }
  throw Error(std::string("unknown land-use letter '") + c + "'");
}

const char* land_use_name(LandUse u) {
  switch (u) {
    case LandUse::Residential: return "residential";
    case LandUse::Office: return "office";
    case LandUse::Green: return "green";
    case LandUse::Commercial: return "commercial";
    case LandUse::Facility: return "facility";
    case LandUse::Empty: return "empty";
  }
  return "?";
}

LandUse land_use_from_name(const std::string& name) {
  for (auto u : {LandUse::Residential, LandUse::Office, LandUse::Green, LandUse::Commercial, LandUse::Facility,
                 LandUse::Empty})
    if (name == land_use_name(u)) return u;
  throw Error("unknown land use '" + name + "'");
}

UrbanGrid::UrbanGrid(int width, int height, std::vector<LandUse> cells, int counter)
    : width_(width), height_(height), cells_(std::move(cells)), counter_(counter) {
  if (width < 1 || height < 1) throw Error("grid dimensions must be positive");
  if (cells_.size() != static_cast<std::size_t>(width) * height) throw Error("grid cell count mismatch");
  if (counter < 0) throw Error("negative step counter");
}

UrbanGrid UrbanGrid::from_rows(const std::vector<std::string>& rows) {
  if (rows.empty()) throw Error("grid has no rows");
  std::vector<LandUse> cells;
  for (const auto& r : rows) {
    if (r.size() != rows.front().size()) throw Error("grid rows have different lengths");
    for (char c : r) cells.push_back(land_use_from_letter(c));
  }
  return UrbanGrid(static_cast<int>(rows.front().size()), static_cast<int>(rows.size()), std::move(cells));
}

int UrbanGrid::count(LandUse u) const { return static_cast<int>(std::count(cells_.begin(), cells_.end(), u)); }

std::vector<std::string> UrbanGrid::rows() const {
  std::vector<std::string> out;
  for (int r = 0; r < height_; ++r) {
    std::string s;
    for (int c = 0; c < width_; ++c) s += static_cast<char>(at(r, c));
    out.push_back(s);
  }
  return out;
}

double sustainability_score(const UrbanGrid& g) {
  int used = static_cast<int>(g.cells().size()) - g.count(LandUse::Empty);
  if (used == 0) throw EmptyGrid("sustainability of a grid with no used land");
  int good = g.count(LandUse::Green) + g.count(LandUse::Commercial) + g.count(LandUse::Facility);
  return 100.0 * good / used;
}

double diversity_score(const UrbanGrid& g) {
  int used = static_cast<int>(g.cells().size()) - g.count(LandUse::Empty);
  if (used == 0) throw EmptyGrid("diversity of a grid with no used land");
  double h = 0;
  for (auto u : kUsedTypes) {
    int n = g.count(u);
    if (n == 0) continue;
    double p = static_cast<double>(n) / used;
    h -= p * std::log(p);
  }
  return 100.0 * h / std::log(5.0);
}

const ConversionRule& RuleSet::rule_for(LandUse source) const {
  for (const auto& r : rules)
    if (r.source == source) return r;
  throw Error(std::string("no conversion rule for ") + land_use_name(source));
}

RuleSet RuleSet::standard() {
  using L = LandUse;
  return RuleSet{{
      {L::Green, 5, {L::Commercial, L::Facility}},
      {L::Residential, 5, {L::Green, L::Commercial}},
      {L::Office, 5, {L::Commercial, L::Facility}},
      {L::Commercial, 5, {L::Residential, L::Office}},
      {L::Facility, 5, {L::Green, L::Office}},
      {L::Empty, 5, {L::Residential, L::Green}},
  }};
}

UrbanGrid urban_step(const UrbanGrid& grid, LandUse source, const RuleSet& rules, int budget) {
  if (grid.counter() >= budget) throw BudgetExhausted("the action budget is already spent");
  const auto& rule = rules.rule_for(source);
  if (rule.targets.empty()) throw Error("conversion rule without targets");
  std::vector<LandUse> cells = grid.cells();
  int n = (grid.count(source) * rule.percent + 99) / 100;
  int t = static_cast<int>(rule.targets.size());
  int done = 0;
  for (int k = 0; k < t; ++k) {
    int share = n / t + (k < n % t ? 1 : 0);
    for (auto& c : cells) {
      if (share == 0) break;
      if (c != source) continue;
      c = rule.targets[k];
      --share;
      ++done;
    }
  }
  if (done != n) throw InternalError("conversion count mismatch");
  return UrbanGrid(grid.width(), grid.height(), std::move(cells), grid.counter() + 1);
}

UrbanGrid grid_from_json(const nlohmann::json& j) {
  auto rows = j.at("rows").get<std::vector<std::string>>();
  auto g = UrbanGrid::from_rows(rows);
  if (j.contains("width") && j["width"].get<int>() != g.width()) throw Error("grid width does not match rows");
  if (j.contains("height") && j["height"].get<int>() != g.height()) throw Error("grid height does not match rows");
  if (j.contains("counter")) g = UrbanGrid(g.width(), g.height(), g.cells(), j["counter"].get<int>());
  return g;
}

nlohmann::ordered_json grid_to_json(const UrbanGrid& g) {
  return {{"width", g.width()}, {"height", g.height()}, {"counter", g.counter()}, {"rows", g.rows()}};
}

namespace {

const char* ansi_colour(LandUse u) {
  switch (u) {
    case LandUse::Commercial: return "\x1b[41m";
    case LandUse::Facility: return "\x1b[45m";
    case LandUse::Green: return "\x1b[42m";
    case LandUse::Residential: return "\x1b[44m";
    case LandUse::Office: return "\x1b[43m";
    case LandUse::Empty: return "\x1b[40m";
  }
  return "";
}

}  // namespace

std::string render(const UrbanGrid& g, bool ansi) {
  std::string out;
  for (int r = 0; r < g.height(); ++r) {
    for (int c = 0; c < g.width(); ++c) {
      auto u = g.at(r, c);
      if (ansi)
        out += std::string(ansi_colour(u)) + static_cast<char>(u) + " \x1b[0m";
      else
        out += std::string(1, static_cast<char>(u)) + ' ';
    }
    out += '\n';
  }
  return out;
}

std::string legend(bool ansi) {
  std::string out;
  for (auto u : {LandUse::Commercial, LandUse::Facility, LandUse::Green, LandUse::Residential, LandUse::Office,
                 LandUse::Empty}) {
    if (ansi) out += ansi_colour(u);
    out += static_cast<char>(u);
    if (ansi) out += "\x1b[0m";
    out += std::string(" ") + land_use_name(u) + "  ";
  }
  return out;
}

UrbanSimulator::UrbanSimulator(UrbanGrid initial, RuleSet rules, int budget, bspace::BinTable bins)
    : initial_(std::move(initial)), rules_(std::move(rules)), budget_(budget), bins_(std::move(bins)) {
  if (budget < 1) throw Error("urban budget must be positive");
  std::vector<std::string> names;
  for (const auto& l : bins_.labels()) names.push_back(l + "_S");
  for (const auto& l : bins_.labels()) names.push_back(l + "_D");
  names.push_back(bspace::kHorizonReached);
  alphabet_ = ltl::Alphabet(names);
}

std::vector<LandUse> UrbanSimulator::legal_actions(const UrbanGrid& g) const {
  std::vector<LandUse> out;
  if (g.counter() >= budget_) return out;
  for (const auto& r : rules_.rules) out.push_back(r.source);
  return out;
}

std::optional<UrbanGrid> UrbanSimulator::step(const UrbanGrid& g, LandUse a) const {
  return urban_step(g, a, rules_, budget_);
}

ltl::Valuation UrbanSimulator::propositions(const UrbanGrid& g) const {
  ltl::Valuation v(alphabet_.size(), false);
  v[alphabet_.index_of(bins_.classify(sustainability_score(g)) + "_S")] = true;
  v[alphabet_.index_of(bins_.classify(diversity_score(g)) + "_D")] = true;
  v[alphabet_.index_of(bspace::kHorizonReached)] = g.counter() >= budget_;
  return v;
}

std::string UrbanSimulator::state_key(const UrbanGrid& g) const {
  std::string k(g.cells().size(), ' ');
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = static_cast<char>(g.cells()[i]);
  return k + '#' + std::to_string(g.counter());
}

std::string UrbanSimulator::action_name(LandUse a) const { return std::string("convert-") + land_use_name(a); }

std::optional<LandUse> UrbanSimulator::parse_action(const std::string& name) const {
  for (const auto& r : rules_.rules)
    if (action_name(r.source) == name) return r.source;
  return std::nullopt;
}

namespace {

double distance_to(const bspace::Bin& b, double x) {
  if (x < b.lo) return b.lo - x;
  if (x > b.hi) return x - b.hi;
  if (x == b.lo && !b.lo_closed) return 1e-6;
  return 0.0;
}

}  // namespace

std::function<double(const UrbanGrid&)> UrbanSimulator::cell_heuristic(const bspace::Behaviour& cell) const {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const auto& s_label = std::get<std::string>(cell.values.at(0));
  const auto& d_label = std::get<std::string>(cell.values.at(1));
  if (s_label == bspace::kHorizonReached || d_label == bspace::kHorizonReached)
    return [](const UrbanGrid&) { return kInf; };
  bspace::Bin sb = bins_.bin(s_label);
  bspace::Bin db = bins_.bin(d_label);
  int max_per_step = 0;
  for (const auto& r : rules_.rules)
    max_per_step = std::max(max_per_step, (static_cast<int>(initial_.cells().size()) * r.percent + 99) / 100);
  return [sb, db, max_per_step, budget = budget_](const UrbanGrid& g) {
    // Each converted cell moves the sustainable count and the used count
    // by at most one.
    int m = max_per_step * (budget - g.counter());
    int used = static_cast<int>(g.cells().size()) - g.count(LandUse::Empty);
    int good = g.count(LandUse::Green) + g.count(LandUse::Commercial) + g.count(LandUse::Facility);
    double lo = used + m == 0 ? 0.0 : 100.0 * std::max(0, good - m) / (used + m);
    double hi = used == 0 ? 100.0 : std::min(100.0, 100.0 * (good + m) / used);
    if (hi < sb.lo || lo > sb.hi) return kInf;
    return distance_to(sb, sustainability_score(g)) + distance_to(db, diversity_score(g));
  };
}

bspace::BehaviourSpace<UrbanTrace> standard_space(const UrbanSimulator& sim) {
  auto s = bspace::categorical_score_feature<UrbanTrace>(
      "sustainability", [](const UrbanTrace& t) { return sustainability_score(t.final_state()); }, sim.bins(), "_S");
  auto d = bspace::categorical_score_feature<UrbanTrace>(
      "diversity", [](const UrbanTrace& t) { return diversity_score(t.final_state()); }, sim.bins(), "_D");
  return bspace::BehaviourSpace<UrbanTrace>({std::move(s), std::move(d)});
}

}  // namespace divplan::domains::urban
