#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "divplan/sat/solver.hpp"

namespace divplan::sat {

class DimacsError : public Error {
 public:
  using Error::Error;
};

void write_dimacs(std::ostream& out, const Cnf& cnf);
Cnf read_dimacs(std::istream& in);

// Parses competition-style solver output ("s SATISFIABLE" plus "v" lines).
// Returns nullopt for UNSAT; throws DimacsError if the status is missing.
std::optional<Model> parse_solver_output(std::string_view text, int num_vars);

// Runs the executable `command` on a temporary DIMACS file and reads its answer
// from stdout.
std::optional<Model> solve_external(const Cnf& cnf, const std::string& command);

}  // namespace divplan::sat
