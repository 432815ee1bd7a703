#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <queue>
#include <random>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "divplan/ltl/eval.hpp"

namespace divplan::search {

// Black-box deterministic simulator. step() returns nullopt when the
// successor is a dead end (e.g. the avatar dies).
template <class S>
concept Simulator = requires(const S& sim, const typename S::State& st, const typename S::Action& a) {
  { sim.initial() } -> std::convertible_to<typename S::State>;
  { sim.legal_actions(st) } -> std::convertible_to<std::vector<typename S::Action>>;
  { sim.step(st, a) } -> std::convertible_to<std::optional<typename S::State>>;
  { sim.propositions(st) } -> std::convertible_to<ltl::Valuation>;
  { sim.is_goal(st) } -> std::convertible_to<bool>;
  { sim.budget() } -> std::convertible_to<std::optional<int>>;
  { sim.alphabet() } -> std::convertible_to<const ltl::Alphabet&>;
  { sim.state_key(st) } -> std::convertible_to<std::string>;
  { sim.action_name(a) } -> std::convertible_to<std::string>;
};

template <class Sim>
struct SimTrace {
  std::vector<typename Sim::Action> actions;
  std::vector<std::string> action_names;
  std::vector<typename Sim::State> states;  // states.size() == actions.size() + 1
  ltl::PropTrace props;

  std::size_t size() const { return actions.size(); }
  const typename Sim::State& final_state() const { return states.back(); }

  // Plans are identified by their action sequence.
  friend bool operator==(const SimTrace& a, const SimTrace& b) { return a.action_names == b.action_names; }
};

enum class Strategy { BreadthFirst, DepthFirst, BestFirst };

Strategy parse_strategy(const std::string& s);
const char* to_string(Strategy s);

template <class Sim>
struct SearchConfig {
  Strategy strategy = Strategy::BreadthFirst;
  // Lower is better. +infinity marks a state from which the target cannot
  // be reached; such nodes are pruned, so the value must be safe.
  std::function<double(const typename Sim::State&)> heuristic;
  std::uint64_t node_budget = 1'000'000;
  std::uint64_t seed = 0;  // non-zero shuffles successor order
  bool monitor_pruning = true;
};

enum class SearchStatus { Found, Exhausted, NodeBudgetExceeded };

const char* to_string(SearchStatus s);

struct SearchStats {
  std::uint64_t expanded = 0;
  std::uint64_t generated = 0;
  std::uint64_t pruned = 0;
  std::uint64_t duplicates = 0;
  std::uint64_t dead_ends = 0;

  SearchStats& operator+=(const SearchStats& o);
};

nlohmann::ordered_json to_json(const SearchStats& s);

template <class Sim>
struct SearchResult {
  SearchStatus status = SearchStatus::Exhausted;
  std::optional<SimTrace<Sim>> trace;
  SearchStats stats;
};

// Prefix tree of excluded action sequences. Node kOff stands for every
// prefix that leaves the tree.
class ExclusionTrie {
 public:
  static constexpr int kOff = -1;

  ExclusionTrie() = default;
  explicit ExclusionTrie(const std::vector<std::vector<std::string>>& sequences);

  int root() const { return nodes_.empty() ? kOff : 0; }
  int child(int node, const std::string& action) const;
  bool terminal(int node) const { return node != kOff && nodes_[node].terminal; }

 private:
  struct TrieNode {
    std::unordered_map<std::string, int> next;
    bool terminal = false;
  };
  std::vector<TrieNode> nodes_;
};

// Forward search for a goal trace within the simulator's budget whose
// proposition sequence satisfies `target`. Duplicate detection is keyed on
// (state, residual obligation, exclusion-trie node) and keeps the shallowest
// depth seen.
template <Simulator Sim>
SearchResult<Sim> constrained_search(const Sim& sim, const ltl::Formula& target,
                                     const SearchConfig<Sim>& cfg,
                                     const ExclusionTrie& excluded = ExclusionTrie{}) {
  using State = typename Sim::State;
  using Action = typename Sim::Action;
  const auto& alpha = sim.alphabet();
  ltl::check_atoms(target, alpha);
  if (cfg.node_budget < 1) throw Error("node budget must be at least 1");

  struct Node {
    State state;
    ltl::Valuation props;
    ltl::Formula residual;
    int trie;
    int depth;
    int parent;
    std::optional<Action> action;
    std::string name;
  };

  SearchResult<Sim> out;
  auto& stats = out.stats;
  const int limit = sim.budget().value_or(INT_MAX);
  std::vector<Node> nodes;
  std::unordered_map<std::string, int> closed;
  std::deque<int> open;
  using Entry = std::tuple<double, int, std::uint64_t, int>;  // h, -depth, seq, index
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> best;
  std::uint64_t seq = 0;
  std::mt19937_64 rng(cfg.seed);

  auto h_of = [&](const State& s) { return cfg.heuristic ? cfg.heuristic(s) : 0.0; };
  auto key_of = [&](const State& s, const ltl::Formula& r, int trie) {
    return sim.state_key(s) + '\x1f' + r->key + '\x1f' + std::to_string(trie);
  };
  auto push = [&](Node n) {
    double h = 0;
    if (cfg.heuristic) {
      h = h_of(n.state);
      if (std::isinf(h) && h > 0) {
        ++stats.pruned;
        return;
      }
    }
    int idx = static_cast<int>(nodes.size());
    int depth = n.depth;
    nodes.push_back(std::move(n));
    if (cfg.strategy == Strategy::BestFirst)
      best.emplace(h, -depth, seq++, idx);
    else
      open.push_back(idx);
  };
  auto pop = [&]() {
    int idx;
    if (cfg.strategy == Strategy::BestFirst) {
      idx = std::get<3>(best.top());
      best.pop();
    } else if (cfg.strategy == Strategy::DepthFirst) {
      idx = open.back();
      open.pop_back();
    } else {
      idx = open.front();
      open.pop_front();
    }
    return idx;
  };
  auto empty = [&]() { return cfg.strategy == Strategy::BestFirst ? best.empty() : open.empty(); };

  State s0 = sim.initial();
  auto p0 = sim.propositions(s0);
  closed.emplace(key_of(s0, target, excluded.root()), 0);
  push(Node{std::move(s0), std::move(p0), target, excluded.root(), 0, -1, std::nullopt, {}});

  while (!empty()) {
    if (stats.expanded >= cfg.node_budget) {
      out.status = SearchStatus::NodeBudgetExceeded;
      return out;
    }
    const int idx = pop();
    if (cfg.strategy == Strategy::DepthFirst) {
      // A shallower copy of this node may have been queued since.
      auto it = closed.find(key_of(nodes[idx].state, nodes[idx].residual, nodes[idx].trie));
      if (it != closed.end() && it->second < nodes[idx].depth) {
        ++stats.duplicates;
        continue;
      }
    }
    if (sim.is_goal(nodes[idx].state) && !excluded.terminal(nodes[idx].trie) &&
        ltl::holds_at_end(nodes[idx].residual, alpha, nodes[idx].props)) {
      SimTrace<Sim> t;
      for (int i = idx; i != -1; i = nodes[i].parent) {
        t.states.push_back(nodes[i].state);
        t.props.steps.push_back(nodes[i].props);
        if (nodes[i].action) {
          t.actions.push_back(*nodes[i].action);
          t.action_names.push_back(nodes[i].name);
        }
      }
      std::reverse(t.states.begin(), t.states.end());
      std::reverse(t.props.steps.begin(), t.props.steps.end());
      std::reverse(t.actions.begin(), t.actions.end());
      std::reverse(t.action_names.begin(), t.action_names.end());
      out.status = SearchStatus::Found;
      out.trace = std::move(t);
      return out;
    }
    if (nodes[idx].depth >= limit) continue;
    auto next = ltl::progress(nodes[idx].residual, alpha, nodes[idx].props);
    if (cfg.monitor_pruning && ltl::is_false(next)) {
      ++stats.pruned;
      continue;
    }
    ++stats.expanded;
    std::vector<Action> actions = sim.legal_actions(nodes[idx].state);
    if (cfg.seed != 0) std::shuffle(actions.begin(), actions.end(), rng);
    // Depth-first pops from the back; reverse so the first action is tried first.
    if (cfg.strategy == Strategy::DepthFirst) std::reverse(actions.begin(), actions.end());
    const int depth = nodes[idx].depth + 1;
    for (const auto& a : actions) {
      std::optional<State> s2 = sim.step(nodes[idx].state, a);
      if (!s2) {
        ++stats.dead_ends;
        continue;
      }
      ++stats.generated;
      std::string name = sim.action_name(a);
      int trie = excluded.child(nodes[idx].trie, name);
      auto key = key_of(*s2, next, trie);
      auto [it, inserted] = closed.emplace(std::move(key), depth);
      if (!inserted) {
        if (it->second <= depth) {
          ++stats.duplicates;
          continue;
        }
        it->second = depth;
      }
      auto props = sim.propositions(*s2);
      push(Node{std::move(*s2), std::move(props), next, trie, depth, idx, a, std::move(name)});
    }
  }
  out.status = SearchStatus::Exhausted;
  return out;
}

}  // namespace divplan::search
