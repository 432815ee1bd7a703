#pragma once

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "divplan/error.hpp"

namespace divplan::ltl {

enum class Op { True, False, Atom, Not, And, Or, Always, Eventually };

struct Node;
using Formula = std::shared_ptr<const Node>;

// Immutable formula node. `key` is the canonical text of the subtree, so two
// formulas are structurally equal iff their keys are equal.
struct Node {
  Op op;
  std::string atom;
  std::vector<Formula> kids;
  std::string key;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Next, Until and the other binary temporal operators are deliberately
// outside the grammar.
class UnsupportedOperator : public ParseError {
 public:
  using ParseError::ParseError;
};

class UnknownAtom : public Error {
 public:
  explicit UnknownAtom(const std::string& atom) : Error("unknown atom '" + atom + "'") {}
};

// Structure-preserving constructors.
Formula make_true();
Formula make_false();
Formula make_atom(std::string_view name);
Formula make_not(Formula f);
Formula make_and(std::vector<Formula> kids);
Formula make_or(std::vector<Formula> kids);
Formula make_always(Formula f);
Formula make_eventually(Formula f);

// Simplifying constructors: flatten nested connectives, fold constants and
// drop duplicate operands (canonical order). Used by progression so that
// residual obligations stay small and comparable.
Formula simplify_not(Formula f);
Formula simplify_and(std::vector<Formula> kids);
Formula simplify_or(std::vector<Formula> kids);

inline bool equal(const Formula& a, const Formula& b) { return a->key == b->key; }
inline const std::string& to_string(const Formula& f) { return f->key; }
inline bool is_true(const Formula& f) { return f->op == Op::True; }
inline bool is_false(const Formula& f) { return f->op == Op::False; }

std::set<std::string> atoms(const Formula& f);
int depth(const Formula& f);

// Grammar:
//   or    := and ('|' and)*
//   and   := unary ('&' unary)*
//   unary := '!' unary | ('G' | 'F')+ unary | primary
//   primary := 'true' | 'false' | ident | '(' or ')'
// A word made only of F and G letters followed by an operand is a chain of
// temporal operators, so "FG p" reads as F(G p). Identifiers may contain
// letters, digits, '_' and '-'.
Formula parse(std::string_view text);

// Proposition names with a stable index order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  bool contains(std::string_view name) const;
  std::size_t index_of(std::string_view name) const;  // throws UnknownAtom

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, std::size_t> index_;
};

// Throws UnknownAtom if f mentions a proposition outside the alphabet.
void check_atoms(const Formula& f, const Alphabet& alphabet);

}  // namespace divplan::ltl
