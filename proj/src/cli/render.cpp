#include <map>
#include <sstream>

#include "divplan/cli/app.hpp"
#include "divplan/cli/space_config.hpp"
#include "divplan/domains/platformer.hpp"
#include "divplan/domains/urban.hpp"

namespace divplan::cli {

namespace {

using json = nlohmann::json;

std::string behaviour_text(const json& b) {
  std::string s = "<";
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += ", ";
    if (b[i].is_string()) {
      s += b[i].get<std::string>();
    } else {
      s += "{";
      for (std::size_t j = 0; j < b[i].size(); ++j) s += (j ? ", " : "") + b[i][j].get<std::string>();
      s += "}";
    }
  }
  return s + ">";
}

std::string pad(std::string s, std::size_t w) {
  if (s.size() < w) s.append(w - s.size(), ' ');
  return s;
}

// Which plans fall in which cell. Two label dimensions print as a matrix.
std::string occupancy(const json& rep) {
  std::ostringstream out;
  const auto& features = rep.at("space").at("features");
  const auto& plans = rep.at("plans");
  out << "behaviour space occupancy (bdc " << rep.at("bdc").get<std::size_t>() << "):\n";
  if (features.size() == 2 && features[0].at("kind") == "labels" && features[1].at("kind") == "labels") {
    std::map<std::pair<std::string, std::string>, std::string> marks;
    for (const auto& p : plans) {
      auto& m = marks[{p["behaviour"][0].get<std::string>(), p["behaviour"][1].get<std::string>()}];
      m += (m.empty() ? "" : ",") + std::to_string(p["index"].get<int>());
    }
    const auto& rows = features[0]["values"];
    const auto& cols = features[1]["values"];
    out << pad(features[0]["name"].get<std::string>() + " \\ " + features[1]["name"].get<std::string>(), 28);
    for (const auto& c : cols) out << pad(c.get<std::string>(), 10);
    out << "\n";
    for (const auto& r : rows) {
      out << pad(r.get<std::string>(), 28);
      for (const auto& c : cols) {
        auto it = marks.find({r.get<std::string>(), c.get<std::string>()});
        out << pad(it == marks.end() ? "." : "#" + it->second, 10);
      }
      out << "\n";
    }
    return out.str();
  }
  std::map<std::string, std::string> cells;
  for (const auto& p : plans) {
    auto& m = cells[behaviour_text(p["behaviour"])];
    m += (m.empty() ? "" : ",") + std::to_string(p["index"].get<int>());
  }
  for (const auto& [cell, idx] : cells) out << "  " << cell << "  plans " << idx << "\n";
  return out.str();
}

std::string render_urban(const json& rep, bool ansi) {
  using namespace domains::urban;
  std::ostringstream out;
  auto initial = UrbanGrid::from_rows(rep.at("initial_grid").get<std::vector<std::string>>());
  out << "legend: " << legend(ansi) << "\n\n";
  out << "initial grid (S " << rep["initial_scores"]["sustainability"].get<double>() << ", D "
      << rep["initial_scores"]["diversity"].get<double>() << ")\n"
      << render(initial, ansi) << "\n";
  for (const auto& p : rep.at("plans")) {
    auto g = UrbanGrid::from_rows(p.at("final_grid").get<std::vector<std::string>>());
    out << "plan " << p["index"].get<int>() << " " << behaviour_text(p["behaviour"]) << " S "
        << p["final_scores"]["sustainability"].get<double>() << ", D "
        << p["final_scores"]["diversity"].get<double>() << "\n  ";
    for (const auto& a : p["actions"]) out << a.get<std::string>() << " ";
    out << "\n" << render(g, ansi) << "\n";
  }
  return out.str();
}

std::string render_platformer(const json& rep) {
  using namespace domains::platformer;
  std::string text;
  for (const auto& r : rep.at("level")) text += r.get<std::string>() + "\n";
  auto level = Level::parse(text);
  std::ostringstream out;
  for (const auto& p : rep.at("plans")) {
    std::vector<PlatformerState> states;
    for (const auto& xy : p.at("path")) {
      PlatformerState s;
      s.x = xy[0].get<int>();
      s.y = xy[1].get<int>();
      states.push_back(s);
    }
    out << "plan " << p["index"].get<int>() << " " << behaviour_text(p["behaviour"]) << ", "
        << p["length"].get<int>() << " steps\n"
        << render_path(level, states) << "\n";
  }
  return out.str();
}

std::string render_story(const json& rep) {
  std::ostringstream out;
  for (const auto& p : rep.at("plans")) {
    out << "narrative " << p["index"].get<int>() << " (" << p["length"].get<int>() << " steps):";
    for (const auto& a : p["actions"]) out << " " << a.get<std::string>();
    out << "\n";
    if (!p.contains("final_goal_fluents")) continue;
    for (const auto& f : p["final_goal_fluents"]) {
      auto s = f.get<std::string>();
      auto open = s.find('('), comma = s.find(',');
      if (s.rfind("married-to(", 0) == 0 && comma != std::string::npos)
        out << "  " << s.substr(open + 1, comma - open - 1) << " married "
            << s.substr(comma + 1, s.size() - comma - 2) << "\n";
      else
        out << "  " << s << "\n";
    }
  }
  return out.str();
}

}  // namespace

std::string render_report(const nlohmann::json& rep, const std::string& what_in, bool ansi) {
  if (!rep.contains("schema_version") || rep["schema_version"] != kReportSchemaVersion)
    throw ConfigError("unsupported report schema version (expected " + std::to_string(kReportSchemaVersion) + ")");
  std::string what = what_in;
  std::string domain = rep.value("domain", "");
  if (what.empty()) what = domain == "urban" ? "urban-grid" : domain == "platformer" ? "platformer" : "story-summary";
  std::string body;
  try {
    if (what == "urban-grid")
      body = render_urban(rep, ansi);
    else if (what == "platformer")
      body = render_platformer(rep);
    else if (what == "story-summary")
      body = render_story(rep);
    else
      throw ConfigError("unknown --what '" + what + "'");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("report does not contain " + what + " data: " + e.what());
  }
  return body + occupancy(rep);
}

}  // namespace divplan::cli
