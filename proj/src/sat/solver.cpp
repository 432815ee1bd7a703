#include "divplan/sat/solver.hpp"

#include <algorithm>
#include <cstdlib>

namespace divplan::sat {

namespace {

// Luby sequence scaled by base: 1 1 2 1 1 2 4 ...
double luby(double y, int x) {
  int size = 1, seq = 0;
  for (; size < x + 1; ++seq, size = 2 * size + 1) {
  }
  while (size - 1 != x) {
    size = (size - 1) >> 1;
    --seq;
    x = x % size;
  }
  double r = 1;
  for (int i = 0; i < seq; ++i) r *= y;
  return r;
}

constexpr double kVarDecay = 0.95;
constexpr std::uint64_t kRestartBase = 100;

}  // namespace

Solver::Solver(SolverOptions options) : options_(options), rng_(options.seed) {}

void Solver::reserve_vars(int n) {
  while (num_vars() < n) {
    auto v = static_cast<std::uint32_t>(assigns_.size());
    assigns_.push_back(kUndef);
    level_.push_back(0);
    reason_.push_back(kNoReason);
    activity_.push_back(0.0);
    phase_.push_back(1);
    seen_.push_back(0);
    heap_pos_.push_back(-1);
    watches_.emplace_back();
    watches_.emplace_back();
    heap_insert(v);
  }
}

void Solver::add_clause(const std::vector<int>& clause) {
  if (!ok_) return;
  cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(clause.size());
  for (int d : clause) {
    if (d == 0) throw Error("clause contains literal 0");
    reserve_vars(std::abs(d));
    lits.push_back(to_lit(d));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  std::vector<Lit> kept;
  for (std::size_t i = 0; i < lits.size(); ++i) {
    if (i + 1 < lits.size() && (lits[i] ^ 1u) == lits[i + 1]) return;  // tautology
    auto v = value(lits[i]);
    if (v == kTrue) return;
    if (v == kFalse) continue;
    kept.push_back(lits[i]);
  }
  if (kept.empty()) {
    ok_ = false;
    return;
  }
  if (kept.size() == 1) {
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return;
  }
  clauses_.push_back({std::move(kept), false});
  attach(static_cast<std::uint32_t>(clauses_.size() - 1));
}

void Solver::attach(std::uint32_t cref) {
  const auto& c = clauses_[cref].lits;
  watches_[c[0] ^ 1u].push_back({cref, c[1]});
  watches_[c[1] ^ 1u].push_back({cref, c[0]});
}

void Solver::enqueue(Lit l, std::uint32_t reason) {
  auto v = var_of(l);
  assigns_[v] = static_cast<std::int8_t>((l & 1u) ? kFalse : kTrue);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

std::uint32_t Solver::propagate() {
  std::uint32_t conflict = kNoReason;
  while (qhead_ < trail_.size()) {
    Lit p = trail_[qhead_++];
    Lit false_lit = p ^ 1u;
    auto& ws = watches_[p];
    ++stats_.propagations;
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      Watcher w = ws[i++];
      if (value(w.blocker) == kTrue) {
        ws[j++] = w;
        continue;
      }
      auto& c = clauses_[w.cref].lits;
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      Lit first = c[0];
      if (first != w.blocker && value(first) == kTrue) {
        ws[j++] = {w.cref, first};
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (value(c[k]) != kFalse) {
          std::swap(c[1], c[k]);
          watches_[c[1] ^ 1u].push_back({w.cref, first});
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = {w.cref, first};
      if (value(first) == kFalse) {
        conflict = w.cref;
        qhead_ = trail_.size();
        while (i < ws.size()) ws[j++] = ws[i++];
      } else {
        enqueue(first, w.cref);
      }
    }
    ws.resize(j);
    if (conflict != kNoReason) break;
  }
  return conflict;
}

void Solver::bump(std::uint32_t v) {
  activity_[v] += var_inc_;
  if (activity_[v] > 1e100) {
    for (auto& a : activity_) a *= 1e-100;
    var_inc_ *= 1e-100;
  }
  if (heap_pos_[v] >= 0) heap_up(static_cast<std::size_t>(heap_pos_[v]));
}

void Solver::analyze(std::uint32_t conflict, std::vector<Lit>& learnt, int& backtrack_level) {
  learnt.clear();
  learnt.push_back(0);  // placeholder for the asserting literal
  int path = 0;
  bool have_p = false;
  Lit p = 0;
  std::size_t index = trail_.size();
  std::uint32_t confl = conflict;
  do {
    const auto& c = clauses_[confl].lits;
    for (std::size_t k = have_p ? 1 : 0; k < c.size(); ++k) {
      Lit q = c[k];
      auto v = var_of(q);
      if (!seen_[v] && level_[v] > 0) {
        bump(v);
        seen_[v] = 1;
        if (level_[v] >= decision_level())
          ++path;
        else
          learnt.push_back(q);
      }
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    have_p = true;
    confl = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --path;
  } while (path > 0);
  learnt[0] = p ^ 1u;

  // Drop literals implied by the rest of the clause.
  std::vector<Lit> to_clear(learnt.begin() + 1, learnt.end());
  std::size_t keep = 1;
  for (std::size_t i = 1; i < learnt.size(); ++i) {
    auto v = var_of(learnt[i]);
    bool redundant = reason_[v] != kNoReason;
    if (redundant) {
      const auto& r = clauses_[reason_[v]].lits;
      for (std::size_t k = 1; k < r.size(); ++k) {
        auto u = var_of(r[k]);
        if (!seen_[u] && level_[u] > 0) {
          redundant = false;
          break;
        }
      }
    }
    if (!redundant) learnt[keep++] = learnt[i];
  }
  learnt.resize(keep);
  for (Lit l : to_clear) seen_[var_of(l)] = 0;

  backtrack_level = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t i = 2; i < learnt.size(); ++i)
      if (level_[var_of(learnt[i])] > level_[var_of(learnt[max_i])]) max_i = i;
    std::swap(learnt[1], learnt[max_i]);
    backtrack_level = level_[var_of(learnt[1])];
  }
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  for (std::size_t i = trail_.size(); i-- > trail_lim_[static_cast<std::size_t>(level)];) {
    auto v = var_of(trail_[i]);
    phase_[v] = static_cast<char>(trail_[i] & 1u);
    assigns_[v] = kUndef;
    reason_[v] = kNoReason;
    if (heap_pos_[v] < 0) heap_insert(v);
  }
  trail_.resize(trail_lim_[static_cast<std::size_t>(level)]);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

std::optional<Solver::Lit> Solver::pick_branch() {
  if (options_.random_branch_freq > 0.0 && !heap_.empty()) {
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    if (coin(rng_) < options_.random_branch_freq) {
      std::uniform_int_distribution<std::size_t> pick(0, heap_.size() - 1);
      auto v = heap_[pick(rng_)];
      if (assigns_[v] == kUndef) return 2u * v + static_cast<Lit>(phase_[v]);
    }
  }
  while (!heap_.empty()) {
    auto v = heap_pop();
    if (assigns_[v] == kUndef) return 2u * v + static_cast<Lit>(phase_[v]);
  }
  return std::nullopt;
}

int Solver::search(std::uint64_t conflicts_allowed) {
  std::uint64_t conflicts_here = 0;
  std::vector<Lit> learnt;
  for (;;) {
    auto confl = propagate();
    if (confl != kNoReason) {
      ++stats_.conflicts;
      ++conflicts_here;
      if (decision_level() == 0) return 1;
      int bt = 0;
      analyze(confl, learnt, bt);
      cancel_until(bt);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        clauses_.push_back({learnt, true});
        auto cref = static_cast<std::uint32_t>(clauses_.size() - 1);
        attach(cref);
        enqueue(learnt[0], cref);
        ++stats_.learnt_clauses;
      }
      var_inc_ /= kVarDecay;
      if (options_.conflict_limit && stats_.conflicts >= options_.conflict_limit) {
        cancel_until(0);
        throw ResourceLimit("SAT conflict budget of " + std::to_string(options_.conflict_limit) +
                            " exhausted");
      }
      continue;
    }
    if (conflicts_here >= conflicts_allowed) {
      cancel_until(0);
      return 2;
    }
    auto next = pick_branch();
    if (!next) return 0;
    ++stats_.decisions;
    trail_lim_.push_back(trail_.size());
    enqueue(*next, kNoReason);
  }
}

bool Solver::solve() {
  model_.clear();
  if (!ok_) return false;
  cancel_until(0);
  for (int restart = 0;; ++restart) {
    auto budget = static_cast<std::uint64_t>(luby(2.0, restart) * kRestartBase);
    int status = search(budget);
    if (status == 0) {
      model_.assign(assigns_.size() + 1, false);
      for (std::size_t v = 0; v < assigns_.size(); ++v) model_[v + 1] = assigns_[v] == kTrue;
      cancel_until(0);
      return true;
    }
    if (status == 1) {
      ok_ = false;
      return false;
    }
    ++stats_.restarts;
  }
}

void Solver::heap_insert(std::uint32_t v) {
  heap_pos_[v] = static_cast<int>(heap_.size());
  heap_.push_back(v);
  heap_up(heap_.size() - 1);
}

void Solver::heap_up(std::size_t i) {
  auto v = heap_[i];
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!heap_less(v, heap_[parent])) break;
    heap_[i] = heap_[parent];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = parent;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

void Solver::heap_down(std::size_t i) {
  auto v = heap_[i];
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= heap_.size()) break;
    if (child + 1 < heap_.size() && heap_less(heap_[child + 1], heap_[child])) ++child;
    if (!heap_less(heap_[child], v)) break;
    heap_[i] = heap_[child];
    heap_pos_[heap_[i]] = static_cast<int>(i);
    i = child;
  }
  heap_[i] = v;
  heap_pos_[v] = static_cast<int>(i);
}

std::uint32_t Solver::heap_pop() {
  auto top = heap_[0];
  heap_pos_[top] = -1;
  auto last = heap_.back();
  heap_.pop_back();
  if (!heap_.empty()) {
    heap_[0] = last;
    heap_pos_[last] = 0;
    heap_down(0);
  }
  return top;
}

std::optional<Model> solve(const Cnf& cnf, const SolverOptions& options, SolverStats* stats) {
  Solver s(options);
  s.reserve_vars(cnf.num_vars);
  for (const auto& c : cnf.clauses) s.add_clause(c);
  bool sat = s.solve();
  if (stats) *stats = s.stats();
  if (!sat) return std::nullopt;
  auto m = s.model();
  m.resize(static_cast<std::size_t>(cnf.num_vars) + 1, false);
  return m;
}

}  // namespace divplan::sat
