#pragma once

#include <string>
#include <string_view>

#include "divplan/error.hpp"
#include "divplan/pddl/ast.hpp"

namespace divplan::pddl {

class PddlError : public Error {
 public:
  PddlError(const std::string& what, SourceLoc loc);
  SourceLoc where() const { return loc_; }

 private:
  SourceLoc loc_;
};

class SyntaxError : public PddlError {
 public:
  using PddlError::PddlError;
};

// Raised for valid PDDL outside the supported subset (typed STRIPS with
// negative preconditions and equality, plus exists/or in goals).
class UnsupportedFeature : public PddlError {
 public:
  using PddlError::PddlError;
};

class UndeclaredObjectType : public PddlError {
 public:
  using PddlError::PddlError;
};

// Parses and checks a domain; all type, predicate and variable references
// are resolved, errors carry the offending position.
DomainAst parse_domain(std::string_view text);

// Syntactic parse of a problem file.
ProblemAst parse_problem(std::string_view text);

// Resolves a problem against its domain: object types, predicate arities and
// variable scoping. Throws UndeclaredObjectType or SyntaxError.
void check_problem(const ProblemAst& problem, const DomainAst& domain);

inline ProblemAst parse_problem(std::string_view text, const DomainAst& domain) {
  ProblemAst p = parse_problem(text);
  check_problem(p, domain);
  return p;
}

std::string to_pddl(const DomainAst& domain);
std::string to_pddl(const ProblemAst& problem);

}  // namespace divplan::pddl
