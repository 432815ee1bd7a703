#include "divplan/search/generators.hpp"

#include "divplan/search/search.hpp"

namespace divplan::search {

Strategy parse_strategy(const std::string& s) {
  if (s == "bfs" || s == "breadth-first") return Strategy::BreadthFirst;
  if (s == "dfs" || s == "depth-first") return Strategy::DepthFirst;
  if (s == "best" || s == "best-first") return Strategy::BestFirst;
  throw Error("unknown search strategy '" + s + "' (expected bfs, dfs or best-first)");
}

const char* to_string(Strategy s) {
  switch (s) {
    case Strategy::BreadthFirst: return "breadth-first";
    case Strategy::DepthFirst: return "depth-first";
    case Strategy::BestFirst: return "best-first";
  }
  return "?";
}

const char* to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::NodeBudgetExceeded: return "node-budget-exceeded";
  }
  return "?";
}

SearchStats& SearchStats::operator+=(const SearchStats& o) {
  expanded += o.expanded;
  generated += o.generated;
  pruned += o.pruned;
  duplicates += o.duplicates;
  dead_ends += o.dead_ends;
  return *this;
}

nlohmann::ordered_json to_json(const SearchStats& s) {
  return {{"expanded", s.expanded},
          {"generated", s.generated},
          {"pruned", s.pruned},
          {"duplicates", s.duplicates},
          {"dead_ends", s.dead_ends}};
}

nlohmann::ordered_json to_json(const LtlGenStats& s) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::array();
  for (const auto& c : s.cells)
    cells.push_back({{"cell", c.cell}, {"status", to_string(c.status)}, {"stats", to_json(c.stats)}});
  return {{"total", to_json(s.total)}, {"cells", cells}};
}

ExclusionTrie::ExclusionTrie(const std::vector<std::vector<std::string>>& sequences) {
  if (sequences.empty()) return;
  nodes_.emplace_back();
  for (const auto& seq : sequences) {
    int n = 0;
    for (const auto& a : seq) {
      auto it = nodes_[n].next.find(a);
      if (it == nodes_[n].next.end()) {
        int m = static_cast<int>(nodes_.size());
        nodes_[n].next.emplace(a, m);
        nodes_.emplace_back();
        n = m;
      } else {
        n = it->second;
      }
    }
    nodes_[n].terminal = true;
  }
}

int ExclusionTrie::child(int node, const std::string& action) const {
  if (node == kOff) return kOff;
  auto it = nodes_[node].next.find(action);
  return it == nodes_[node].next.end() ? kOff : it->second;
}

}  // namespace divplan::search
