#pragma once

#include <cstddef>

#include "divplan/core/problem.hpp"
#include "divplan/pddl/ast.hpp"
#include "divplan/pddl/parser.hpp"

namespace divplan::pddl {

class GroundingExplosion : public Error {
 public:
  using Error::Error;
};

struct GroundingOptions {
  std::size_t max_actions = 200'000;
};

// Instantiates every schema over type-respecting object tuples. Actions whose
// static preconditions fail in the initial state are dropped, static
// preconditions that hold are removed, and the goal is expanded to DNF with
// existentials replaced by the disjunction of their groundings.
core::GroundProblem ground(const DomainAst& domain, const ProblemAst& problem,
                           const GroundingOptions& options = {});

}  // namespace divplan::pddl
