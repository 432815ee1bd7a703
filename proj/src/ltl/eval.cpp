#include "divplan/ltl/eval.hpp"

#include <cstdint>

namespace divplan::ltl {

namespace {

// Truth value of f at every position of the trace, computed bottom-up.
std::vector<bool> positions(const Formula& f, const Alphabet& alphabet, const PropTrace& t) {
  const std::size_t n = t.steps.size();
  std::vector<bool> out(n);
  switch (f->op) {
    case Op::True:
      out.assign(n, true);
      break;
    case Op::False:
      break;
    case Op::Atom: {
      auto idx = alphabet.index_of(f->atom);
      for (std::size_t i = 0; i < n; ++i) out[i] = t.steps[i].at(idx);
      break;
    }
    case Op::Not: {
      auto k = positions(f->kids[0], alphabet, t);
      for (std::size_t i = 0; i < n; ++i) out[i] = !k[i];
      break;
    }
    case Op::And:
    case Op::Or: {
      const bool conj = f->op == Op::And;
      out.assign(n, conj);
      for (const auto& kid : f->kids) {
        auto k = positions(kid, alphabet, t);
        for (std::size_t i = 0; i < n; ++i) out[i] = conj ? (out[i] && k[i]) : (out[i] || k[i]);
      }
      break;
    }
    case Op::Always:
    case Op::Eventually: {
      const bool always = f->op == Op::Always;
      auto k = positions(f->kids[0], alphabet, t);
      bool acc = always;
      for (std::size_t i = n; i-- > 0;) {
        acc = always ? (acc && k[i]) : (acc || k[i]);
        out[i] = acc;
      }
      break;
    }
  }
  return out;
}

// Same recursion with one bit per position, for traces of at most 64 states.
std::uint64_t mask(const Formula& f, const Alphabet& alphabet, const PropTrace& t, std::uint64_t all) {
  const std::size_t n = t.steps.size();
  switch (f->op) {
    case Op::True:
      return all;
    case Op::False:
      return 0;
    case Op::Atom: {
      auto idx = alphabet.index_of(f->atom);
      std::uint64_t m = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (t.steps[i].at(idx)) m |= std::uint64_t{1} << i;
      return m;
    }
    case Op::Not:
      return ~mask(f->kids[0], alphabet, t, all) & all;
    case Op::And: {
      std::uint64_t m = all;
      for (const auto& kid : f->kids) m &= mask(kid, alphabet, t, all);
      return m;
    }
    case Op::Or: {
      std::uint64_t m = 0;
      for (const auto& kid : f->kids) m |= mask(kid, alphabet, t, all);
      return m;
    }
    case Op::Always:
    case Op::Eventually: {
      const bool always = f->op == Op::Always;
      std::uint64_t k = mask(f->kids[0], alphabet, t, all), m = 0;
      bool acc = always;
      for (std::size_t i = n; i-- > 0;) {
        bool bit = (k >> i) & 1;
        acc = always ? (acc && bit) : (acc || bit);
        if (acc) m |= std::uint64_t{1} << i;
      }
      return m;
    }
  }
  return 0;
}

}  // namespace

bool eval_finite(const Formula& f, const Alphabet& alphabet, const PropTrace& trace) {
  if (trace.steps.empty()) throw Error("eval_finite requires a non-empty trace");
  // Both evaluators visit every atom, so unknown atoms always throw.
  const std::size_t n = trace.steps.size();
  if (n <= 64) return mask(f, alphabet, trace, n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1) & 1;
  return positions(f, alphabet, trace)[0];
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::SatisfiedAllExtensions:
      return "satisfied";
    case Verdict::ViolatedAllExtensions:
      return "violated";
    case Verdict::Undetermined:
      return "undetermined";
  }
  return "?";
}

Formula progress(const Formula& f, const Alphabet& alphabet, const Valuation& v) {
  switch (f->op) {
    case Op::True:
    case Op::False:
      return f;
    case Op::Atom:
      return v.at(alphabet.index_of(f->atom)) ? make_true() : make_false();
    case Op::Not:
      return simplify_not(progress(f->kids[0], alphabet, v));
    case Op::And:
    case Op::Or: {
      std::vector<Formula> kids;
      kids.reserve(f->kids.size());
      for (const auto& k : f->kids) kids.push_back(progress(k, alphabet, v));
      return f->op == Op::And ? simplify_and(std::move(kids)) : simplify_or(std::move(kids));
    }
    case Op::Always:
      return simplify_and({progress(f->kids[0], alphabet, v), f});
    case Op::Eventually:
      return simplify_or({progress(f->kids[0], alphabet, v), f});
  }
  return f;
}

bool holds_at_end(const Formula& f, const Alphabet& alphabet, const Valuation& v) {
  switch (f->op) {
    case Op::True:
      return true;
    case Op::False:
      return false;
    case Op::Atom:
      return v.at(alphabet.index_of(f->atom));
    case Op::Not:
      return !holds_at_end(f->kids[0], alphabet, v);
    case Op::And:
      for (const auto& k : f->kids)
        if (!holds_at_end(k, alphabet, v)) return false;
      return true;
    case Op::Or:
      for (const auto& k : f->kids)
        if (holds_at_end(k, alphabet, v)) return true;
      return false;
    case Op::Always:
    case Op::Eventually:
      return holds_at_end(f->kids[0], alphabet, v);
  }
  return false;
}

Verdict monitor(const Formula& f, const Alphabet& alphabet, const PropTrace& prefix) {
  if (prefix.steps.empty()) throw Error("monitor requires a non-empty prefix");
  check_atoms(f, alphabet);
  Formula residual = f;
  for (std::size_t i = 0; i + 1 < prefix.steps.size(); ++i)
    residual = progress(residual, alphabet, prefix.steps[i]);
  const auto& last = prefix.steps.back();
  const bool ends_here = holds_at_end(residual, alphabet, last);
  const Formula beyond = progress(residual, alphabet, last);
  if (ends_here && is_true(beyond)) return Verdict::SatisfiedAllExtensions;
  if (!ends_here && is_false(beyond)) return Verdict::ViolatedAllExtensions;
  return Verdict::Undetermined;
}

}  // namespace divplan::ltl
