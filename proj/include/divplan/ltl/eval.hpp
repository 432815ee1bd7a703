#pragma once

#include <vector>

#include "divplan/ltl/formula.hpp"

namespace divplan::ltl {

using Valuation = std::vector<bool>;  // indexed by Alphabet

struct PropTrace {
  std::vector<Valuation> steps;
};

// Finite-trace semantics at position 0: G holds at every remaining
// position, F at some remaining position. Requires a non-empty trace.
bool eval_finite(const Formula& f, const Alphabet& alphabet, const PropTrace& trace);

enum class Verdict { SatisfiedAllExtensions, ViolatedAllExtensions, Undetermined };

const char* to_string(Verdict v);

// Residual obligation after consuming one state: for every non-empty trace
// s, [v]·s satisfies f iff s satisfies progress(f, v).
Formula progress(const Formula& f, const Alphabet& alphabet, const Valuation& v);

// Truth of f on the single-state trace [v].
bool holds_at_end(const Formula& f, const Alphabet& alphabet, const Valuation& v);

// Three-valued verdict over all finite extensions t·s (s possibly empty) of
// the prefix. Definite verdicts are sound; Undetermined is returned whenever
// the residual does not simplify to a constant.
Verdict monitor(const Formula& f, const Alphabet& alphabet, const PropTrace& prefix);

}  // namespace divplan::ltl
