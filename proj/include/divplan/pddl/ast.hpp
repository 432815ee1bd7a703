#pragma once

#include <string>
#include <vector>

namespace divplan::pddl {

// Source positions are carried for diagnostics only; they never take part
// in structural equality.
struct SourceLoc {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

struct TypedName {
  std::string name;
  std::string type = "object";
  SourceLoc loc;

  friend bool operator==(const TypedName&, const TypedName&) = default;
};

// Predicate application; "=" is the built-in equality predicate. Arguments
// are either variables ("?x") or object/constant names.
struct Atom {
  std::string predicate;
  std::vector<std::string> args;
  SourceLoc loc;

  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Literal {
  Atom atom;
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

// Goal formula tree.
struct Condition {
  enum class Kind { Atom, Not, And, Or, Exists };

  Kind kind = Kind::And;
  Atom atom;                       // Kind::Atom
  std::vector<TypedName> vars;     // Kind::Exists
  std::vector<Condition> children; // Not (1), And/Or (n), Exists (1)
  SourceLoc loc;

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct PredicateDecl {
  std::string name;
  std::vector<TypedName> params;
  SourceLoc loc;

  friend bool operator==(const PredicateDecl&, const PredicateDecl&) = default;
};

struct ActionSchema {
  std::string name;
  std::vector<TypedName> params;
  std::vector<Literal> precondition;  // conjunction
  std::vector<Atom> add;
  std::vector<Atom> del;
  SourceLoc loc;

  friend bool operator==(const ActionSchema&, const ActionSchema&) = default;
};

struct DomainAst {
  std::string name;
  std::vector<std::string> requirements;
  std::vector<TypedName> types;  // name with its parent type
  std::vector<TypedName> constants;
  std::vector<PredicateDecl> predicates;
  std::vector<ActionSchema> actions;

  const PredicateDecl* find_predicate(const std::string& name) const;
  bool has_type(const std::string& name) const;

  friend bool operator==(const DomainAst&, const DomainAst&) = default;
};

struct ProblemAst {
  std::string name;
  std::string domain_name;
  std::vector<TypedName> objects;
  std::vector<Atom> init;
  Condition goal;

  friend bool operator==(const ProblemAst&, const ProblemAst&) = default;
};

}  // namespace divplan::pddl
