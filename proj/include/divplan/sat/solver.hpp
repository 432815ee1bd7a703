#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "divplan/error.hpp"

namespace divplan::sat {

// Clause set over variables 1..num_vars, literals in DIMACS convention.
struct Cnf {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;

  int new_var() { return ++num_vars; }
  void add(std::vector<int> clause) { clauses.push_back(std::move(clause)); }
};

// model[v] is the value of variable v; model[0] is unused.
using Model = std::vector<bool>;

class ResourceLimit : public Error {
 public:
  using Error::Error;
};

struct SolverOptions {
  std::uint64_t conflict_limit = 0;  // 0: unlimited
  std::uint32_t seed = 0;
  double random_branch_freq = 0.0;
};

struct SolverStats {
  std::uint64_t decisions = 0;
  std::uint64_t conflicts = 0;
  std::uint64_t propagations = 0;
  std::uint64_t restarts = 0;
  std::uint64_t learnt_clauses = 0;
};

// Conflict-driven clause learning: two watched literals, first-UIP learning
// with clause minimisation, VSIDS branching with saved phases and Luby
// restarts. Branching ties break on the lower variable index, so a given
// clause sequence and seed always yield the same model.
class Solver {
 public:
  explicit Solver(SolverOptions options = {});

  void reserve_vars(int n);
  int num_vars() const { return static_cast<int>(assigns_.size()); }

  void add_clause(const std::vector<int>& clause);

  // True for SAT (model available), false for UNSAT. Throws ResourceLimit
  // when the conflict budget runs out.
  bool solve();

  Model model() const { return model_; }
  const SolverStats& stats() const { return stats_; }

 private:
  using Lit = std::uint32_t;
  static constexpr std::uint32_t kNoReason = UINT32_MAX;
  static constexpr std::int8_t kFalse = 0, kTrue = 1, kUndef = 2;

  struct Clause {
    std::vector<Lit> lits;
    bool learnt = false;
  };
  struct Watcher {
    std::uint32_t cref;
    Lit blocker;
  };

  static Lit to_lit(int dimacs) {
    return dimacs > 0 ? 2u * static_cast<Lit>(dimacs - 1) : 2u * static_cast<Lit>(-dimacs - 1) + 1u;
  }
  static std::uint32_t var_of(Lit l) { return l >> 1; }

  std::int8_t value(Lit l) const {
    auto a = assigns_[l >> 1];
    return a == kUndef ? kUndef : static_cast<std::int8_t>(a ^ static_cast<std::int8_t>(l & 1u));
  }
  int decision_level() const { return static_cast<int>(trail_lim_.size()); }

  void enqueue(Lit l, std::uint32_t reason);
  std::uint32_t propagate();
  void analyze(std::uint32_t conflict, std::vector<Lit>& learnt, int& backtrack_level);
  void cancel_until(int level);
  void attach(std::uint32_t cref);
  std::optional<Lit> pick_branch();
  void bump(std::uint32_t var);
  // 0: SAT, 1: UNSAT, 2: restart
  int search(std::uint64_t conflicts_allowed);

  // Max-heap of variables keyed by activity.
  void heap_insert(std::uint32_t v);
  void heap_up(std::size_t i);
  void heap_down(std::size_t i);
  std::uint32_t heap_pop();
  bool heap_less(std::uint32_t a, std::uint32_t b) const {
    return activity_[a] > activity_[b] || (activity_[a] == activity_[b] && a < b);
  }

  SolverOptions options_;
  SolverStats stats_;
  bool ok_ = true;
  std::vector<Clause> clauses_;
  std::vector<std::vector<Watcher>> watches_;
  std::vector<std::int8_t> assigns_;
  std::vector<int> level_;
  std::vector<std::uint32_t> reason_;
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::vector<double> activity_;
  double var_inc_ = 1.0;
  std::vector<char> phase_;  // 1: last assigned false
  std::vector<char> seen_;
  std::vector<std::uint32_t> heap_;
  std::vector<int> heap_pos_;
  std::mt19937 rng_;
  Model model_;
};

// Convenience wrapper around Solver.
std::optional<Model> solve(const Cnf& cnf, const SolverOptions& options = {},
                           SolverStats* stats = nullptr);

}  // namespace divplan::sat
