#include "divplan/pddl/grounder.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace divplan::pddl {

namespace {

using GLit = std::pair<std::string, bool>;  // canonical fluent, polarity
using Dnf = std::vector<std::vector<GLit>>;

class TypeTable {
 public:
  explicit TypeTable(const DomainAst& d) {
    for (const auto& t : d.types) parent_[t.name] = t.type;
  }

  bool is_subtype(std::string t, const std::string& ancestor) const {
    for (std::size_t guard = 0; guard <= parent_.size() + 1; ++guard) {
      if (t == ancestor) return true;
      if (t == "object") return false;
      auto it = parent_.find(t);
      if (it == parent_.end()) return false;
      t = it->second;
    }
    throw SyntaxError("cyclic type hierarchy involving '" + t + "'", {});
  }

 private:
  std::map<std::string, std::string> parent_;
};

struct Universe {
  std::vector<TypedName> objects;
  TypeTable types;

  std::vector<std::string> of_type(const std::string& type) const {
    std::vector<std::string> out;
    for (const auto& o : objects)
      if (types.is_subtype(o.type, type)) out.push_back(o.name);
    return out;
  }
};

std::string resolve(const std::string& term, const std::map<std::string, std::string>& binding) {
  if (!term.empty() && term[0] == '?') return binding.at(term);
  return term;
}

std::string ground_atom(const Atom& a, const std::map<std::string, std::string>& binding) {
  std::vector<std::string> args;
  args.reserve(a.args.size());
  for (const auto& t : a.args) args.push_back(resolve(t, binding));
  return core::Fluent(a.predicate, std::move(args)).canonical();
}

Dnf dnf_true() { return Dnf{{}}; }

Dnf normalise(Dnf d) {
  for (auto& conj : d) {
    std::sort(conj.begin(), conj.end());
    conj.erase(std::unique(conj.begin(), conj.end()), conj.end());
  }
  Dnf out;
  std::set<std::vector<GLit>> seen;
  for (auto& conj : d) {
    bool contradictory = false;
    for (std::size_t i = 0; i + 1 < conj.size(); ++i)
      if (conj[i].first == conj[i + 1].first) contradictory = true;
    if (contradictory) continue;
    if (conj.empty()) return dnf_true();
    if (seen.insert(conj).second) out.push_back(std::move(conj));
  }
  return out;
}

Dnf dnf_and(const Dnf& a, const Dnf& b) {
  Dnf out;
  for (const auto& x : a)
    for (const auto& y : b) {
      auto conj = x;
      conj.insert(conj.end(), y.begin(), y.end());
      out.push_back(std::move(conj));
    }
  return normalise(std::move(out));
}

Dnf dnf_or(Dnf a, const Dnf& b) {
  a.insert(a.end(), b.begin(), b.end());
  return normalise(std::move(a));
}

class GoalGrounder {
 public:
  explicit GoalGrounder(const Universe& u) : u_(u) {}

  Dnf run(const Condition& c, std::map<std::string, std::string>& binding, bool negated) const {
    switch (c.kind) {
      case Condition::Kind::Atom: {
        if (c.atom.predicate == "=") {
          bool eq = resolve(c.atom.args.at(0), binding) == resolve(c.atom.args.at(1), binding);
          return eq != negated ? dnf_true() : Dnf{};
        }
        return Dnf{{{ground_atom(c.atom, binding), !negated}}};
      }
      case Condition::Kind::Not:
        return run(c.children.at(0), binding, !negated);
      case Condition::Kind::And:
      case Condition::Kind::Or: {
        bool conjunctive = (c.kind == Condition::Kind::And) != negated;
        Dnf acc = conjunctive ? dnf_true() : Dnf{};
        for (const auto& ch : c.children) {
          auto sub = run(ch, binding, negated);
          acc = conjunctive ? dnf_and(acc, sub) : dnf_or(std::move(acc), sub);
        }
        return acc;
      }
      case Condition::Kind::Exists: {
        // A negated existential is a universal: conjunction over groundings.
        Dnf acc = negated ? dnf_true() : Dnf{};
        auto saved = binding;
        expand(c, 0, binding, negated, acc);
        binding = std::move(saved);
        return acc;
      }
    }
    return {};
  }

 private:
  void expand(const Condition& c, std::size_t i, std::map<std::string, std::string>& binding,
              bool negated, Dnf& acc) const {
    if (i == c.vars.size()) {
      auto sub = run(c.children.at(0), binding, negated);
      acc = negated ? dnf_and(acc, sub) : dnf_or(std::move(acc), sub);
      return;
    }
    for (const auto& obj : u_.of_type(c.vars[i].type)) {
      binding[c.vars[i].name] = obj;
      expand(c, i + 1, binding, negated, acc);
    }
  }

  const Universe& u_;
};

struct PendingAction {
  std::string name;
  std::vector<std::string> pre_pos, pre_neg, add, del;
};

class ActionGrounder {
 public:
  ActionGrounder(const Universe& u, const std::set<std::string>& static_preds,
                 const std::set<std::string>& init, std::size_t cap)
      : u_(u), static_preds_(static_preds), init_(init), cap_(cap) {}

  void run(const ActionSchema& schema, std::vector<PendingAction>& out) {
    // Each static or equality literal is tested as soon as its last
    // variable is bound.
    std::vector<std::vector<const Literal*>> checks(schema.params.size() + 1);
    std::map<std::string, std::size_t> position;
    for (std::size_t i = 0; i < schema.params.size(); ++i) position[schema.params[i].name] = i + 1;
    for (const auto& lit : schema.precondition) {
      if (lit.atom.predicate != "=" && !static_preds_.count(lit.atom.predicate)) continue;
      std::size_t at = 0;
      for (const auto& t : lit.atom.args)
        if (!t.empty() && t[0] == '?') at = std::max(at, position.at(t));
      checks[at].push_back(&lit);
    }
    std::vector<std::vector<std::string>> domains;
    for (const auto& p : schema.params) domains.push_back(u_.of_type(p.type));
    std::map<std::string, std::string> binding;
    if (!passes(checks[0], binding)) return;
    bind(schema, domains, checks, 0, binding, out);
  }

 private:
  bool passes(const std::vector<const Literal*>& lits,
              const std::map<std::string, std::string>& binding) const {
    for (const auto* lit : lits) {
      bool truth;
      if (lit->atom.predicate == "=")
        truth = resolve(lit->atom.args.at(0), binding) == resolve(lit->atom.args.at(1), binding);
      else
        truth = init_.count(ground_atom(lit->atom, binding)) > 0;
      if (truth != lit->positive) return false;
    }
    return true;
  }

  void bind(const ActionSchema& schema, const std::vector<std::vector<std::string>>& domains,
            const std::vector<std::vector<const Literal*>>& checks, std::size_t i,
            std::map<std::string, std::string>& binding, std::vector<PendingAction>& out) {
    if (i == schema.params.size()) {
      emit(schema, binding, out);
      return;
    }
    for (const auto& obj : domains[i]) {
      binding[schema.params[i].name] = obj;
      if (passes(checks[i + 1], binding)) bind(schema, domains, checks, i + 1, binding, out);
    }
    binding.erase(schema.params[i].name);
  }

  void emit(const ActionSchema& schema, const std::map<std::string, std::string>& binding,
            std::vector<PendingAction>& out) {
    PendingAction a;
    std::vector<std::string> args;
    for (const auto& p : schema.params) args.push_back(binding.at(p.name));
    a.name = core::Fluent(schema.name, args).canonical();
    for (const auto& lit : schema.precondition) {
      if (lit.atom.predicate == "=" || static_preds_.count(lit.atom.predicate)) continue;
      (lit.positive ? a.pre_pos : a.pre_neg).push_back(ground_atom(lit.atom, binding));
    }
    for (const auto& e : schema.add) a.add.push_back(ground_atom(e, binding));
    for (const auto& e : schema.del) {
      auto g = ground_atom(e, binding);
      // Add-after-delete: a fluent both added and deleted ends up true.
      if (std::find(a.add.begin(), a.add.end(), g) == a.add.end()) a.del.push_back(g);
    }
    for (const auto& p : a.pre_pos)
      if (std::find(a.pre_neg.begin(), a.pre_neg.end(), p) != a.pre_neg.end()) return;
    out.push_back(std::move(a));
    if (out.size() > cap_)
      throw GroundingExplosion("grounding produced more than " + std::to_string(cap_) +
                               " actions");
  }

  const Universe& u_;
  const std::set<std::string>& static_preds_;
  const std::set<std::string>& init_;
  std::size_t cap_;
};

}  // namespace

core::GroundProblem ground(const DomainAst& domain, const ProblemAst& problem,
                           const GroundingOptions& options) {
  check_problem(problem, domain);

  Universe u{{}, TypeTable(domain)};
  u.objects = domain.constants;
  u.objects.insert(u.objects.end(), problem.objects.begin(), problem.objects.end());

  std::set<std::string> dynamic_preds;
  for (const auto& a : domain.actions) {
    for (const auto& e : a.add) dynamic_preds.insert(e.predicate);
    for (const auto& e : a.del) dynamic_preds.insert(e.predicate);
  }
  std::set<std::string> static_preds;
  for (const auto& p : domain.predicates)
    if (!dynamic_preds.count(p.name)) static_preds.insert(p.name);

  std::set<std::string> init;
  for (const auto& a : problem.init) init.insert(core::Fluent(a.predicate, a.args).canonical());

  std::vector<PendingAction> pending;
  ActionGrounder grounder(u, static_preds, init, options.max_actions);
  for (const auto& schema : domain.actions) grounder.run(schema, pending);

  std::map<std::string, std::string> binding;
  Dnf goal = GoalGrounder(u).run(problem.goal, binding, false);

  std::set<std::string> names(init.begin(), init.end());
  for (const auto& a : pending)
    for (const auto* v : {&a.pre_pos, &a.pre_neg, &a.add, &a.del}) names.insert(v->begin(), v->end());
  for (const auto& conj : goal)
    for (const auto& l : conj) names.insert(l.first);

  std::vector<core::Fluent> fluents;
  std::map<std::string, core::FluentId> index;
  for (const auto& n : names) {
    index[n] = static_cast<core::FluentId>(fluents.size());
    fluents.push_back(core::Fluent::parse(n));
  }
  auto ids = [&](const std::vector<std::string>& v) {
    std::vector<core::FluentId> out;
    for (const auto& n : v) out.push_back(index.at(n));
    return out;
  };

  std::vector<core::GroundAction> actions;
  actions.reserve(pending.size());
  for (const auto& a : pending)
    actions.push_back({a.name, ids(a.pre_pos), ids(a.pre_neg), ids(a.add), ids(a.del), 1.0});

  core::State s0(fluents.size());
  for (const auto& n : init) s0.set(index.at(n));

  core::GoalFormula g;
  for (const auto& conj : goal) {
    std::vector<core::Literal> lits;
    for (const auto& l : conj) lits.push_back({index.at(l.first), l.second});
    g.disjuncts.push_back(std::move(lits));
  }
  return core::GroundProblem(std::move(fluents), std::move(actions), std::move(s0), std::move(g));
}

}  // namespace divplan::pddl
