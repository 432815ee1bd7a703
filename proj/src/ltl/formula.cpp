#include "divplan/ltl/formula.hpp"

#include <algorithm>
#include <cctype>

namespace divplan::ltl {

ParseError::ParseError(const std::string& what, std::size_t offset)
    : Error("offset " + std::to_string(offset) + ": " + what), offset_(offset) {}

namespace {

std::string compute_key(Op op, const std::string& atom, const std::vector<Formula>& kids) {
  switch (op) {
    case Op::True:
      return "true";
    case Op::False:
      return "false";
    case Op::Atom:
      return atom;
    case Op::Not:
      return "!" + kids[0]->key;
    case Op::Always:
      return "G " + kids[0]->key;
    case Op::Eventually:
      return "F " + kids[0]->key;
    case Op::And:
    case Op::Or: {
      std::string out = "(";
      for (std::size_t i = 0; i < kids.size(); ++i) {
        if (i) out += op == Op::And ? " & " : " | ";
        out += kids[i]->key;
      }
      return out + ")";
    }
  }
  return {};
}

Formula node(Op op, std::string atom, std::vector<Formula> kids) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->key = compute_key(op, atom, kids);
  n->atom = std::move(atom);
  n->kids = std::move(kids);
  return n;
}

Formula simplify_nary(Op op, std::vector<Formula> kids) {
  const Op unit = op == Op::And ? Op::True : Op::False;
  const Op absorbing = op == Op::And ? Op::False : Op::True;
  std::vector<Formula> flat;
  for (auto& k : kids) {
    if (k->op == unit) continue;
    if (k->op == absorbing) return k;
    if (k->op == op)
      flat.insert(flat.end(), k->kids.begin(), k->kids.end());
    else
      flat.push_back(std::move(k));
  }
  std::sort(flat.begin(), flat.end(), [](const Formula& a, const Formula& b) { return a->key < b->key; });
  flat.erase(std::unique(flat.begin(), flat.end(), [](const Formula& a, const Formula& b) { return a->key == b->key; }),
             flat.end());
  std::set<std::string> keys;
  for (const auto& k : flat) keys.insert(k->key);
  for (const auto& k : flat)
    if (k->op == Op::Not && keys.count(k->kids[0]->key))
      return op == Op::And ? make_false() : make_true();
  if (flat.empty()) return op == Op::And ? make_true() : make_false();
  if (flat.size() == 1) return flat[0];
  return node(op, {}, std::move(flat));
}

}  // namespace

Formula make_true() {
  static const Formula t = node(Op::True, {}, {});
  return t;
}

Formula make_false() {
  static const Formula f = node(Op::False, {}, {});
  return f;
}

Formula make_atom(std::string_view name) { return node(Op::Atom, std::string(name), {}); }
Formula make_not(Formula f) { return node(Op::Not, {}, {std::move(f)}); }
Formula make_always(Formula f) { return node(Op::Always, {}, {std::move(f)}); }
Formula make_eventually(Formula f) { return node(Op::Eventually, {}, {std::move(f)}); }

Formula make_and(std::vector<Formula> kids) {
  if (kids.empty()) return make_true();
  if (kids.size() == 1) return kids[0];
  return node(Op::And, {}, std::move(kids));
}

Formula make_or(std::vector<Formula> kids) {
  if (kids.empty()) return make_false();
  if (kids.size() == 1) return kids[0];
  return node(Op::Or, {}, std::move(kids));
}

Formula simplify_not(Formula f) {
  if (f->op == Op::True) return make_false();
  if (f->op == Op::False) return make_true();
  if (f->op == Op::Not) return f->kids[0];
  return make_not(std::move(f));
}

Formula simplify_and(std::vector<Formula> kids) { return simplify_nary(Op::And, std::move(kids)); }
Formula simplify_or(std::vector<Formula> kids) { return simplify_nary(Op::Or, std::move(kids)); }

std::set<std::string> atoms(const Formula& f) {
  std::set<std::string> out;
  auto rec = [&](auto&& self, const Formula& g) -> void {
    if (g->op == Op::Atom) out.insert(g->atom);
    for (const auto& k : g->kids) self(self, k);
  };
  rec(rec, f);
  return out;
}

int depth(const Formula& f) {
  int d = 0;
  for (const auto& k : f->kids) d = std::max(d, depth(k));
  return f->kids.empty() ? 0 : d + 1;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula run() {
    auto f = parse_or();
    skip_ws();
    if (pos_ < text_.size()) throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return f;
  }

 private:
  static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }

  std::string peek_ident() {
    skip_ws();
    std::size_t p = pos_;
    if (p >= text_.size() || !ident_start(text_[p])) return {};
    while (p < text_.size() && ident_char(text_[p])) ++p;
    return std::string(text_.substr(pos_, p - pos_));
  }

  // True if an operand starts at `p` (after whitespace).
  bool operand_at(std::size_t p) const {
    while (p < text_.size() && std::isspace(static_cast<unsigned char>(text_[p]))) ++p;
    if (p >= text_.size()) return false;
    return text_[p] == '!' || text_[p] == '(' || ident_start(text_[p]);
  }

  void reject_binary_temporal() {
    auto id = peek_ident();
    if (id == "U" || id == "R" || id == "W" || id == "M")
      throw UnsupportedOperator("binary temporal operator '" + id + "' is not supported", pos_);
    if (!id.empty()) throw ParseError("expected an operator before '" + id + "'", pos_);
  }

  Formula parse_or() {
    std::vector<Formula> kids{parse_and()};
    while (eat("||") || eat("|")) kids.push_back(parse_and());
    return make_or(std::move(kids));
  }

  Formula parse_and() {
    std::vector<Formula> kids{parse_unary()};
    reject_binary_temporal();
    while (eat("&&") || eat("&")) {
      kids.push_back(parse_unary());
      reject_binary_temporal();
    }
    return make_and(std::move(kids));
  }

  Formula parse_unary() {
    if (eat("!") || eat("~")) return make_not(parse_unary());
    auto id = peek_ident();
    std::size_t start = pos_;
    if (!id.empty() && operand_at(pos_ + id.size())) {
      bool temporal = std::all_of(id.begin(), id.end(), [](char c) { return c == 'F' || c == 'G'; });
      if (temporal) {
        pos_ += id.size();
        Formula f = parse_unary();
        for (auto it = id.rbegin(); it != id.rend(); ++it)
          f = *it == 'G' ? make_always(std::move(f)) : make_eventually(std::move(f));
        return f;
      }
      if (id == "X" || id == "N" || id == "WX")
        throw UnsupportedOperator("next operator '" + id + "' is not supported", start);
    }
    return parse_primary();
  }

  Formula parse_primary() {
    skip_ws();
    if (eat("(")) {
      auto f = parse_or();
      if (!eat(")")) throw ParseError("expected ')'", pos_);
      return f;
    }
    auto id = peek_ident();
    if (id.empty()) {
      if (pos_ >= text_.size()) throw ParseError("unexpected end of formula", pos_);
      throw ParseError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    }
    pos_ += id.size();
    if (id == "true") return make_true();
    if (id == "false") return make_false();
    return make_atom(id);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Formula parse(std::string_view text) { return Parser(text).run(); }

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (!index_.emplace(names_[i], i).second) throw Error("duplicate proposition '" + names_[i] + "'");
}

bool Alphabet::contains(std::string_view name) const { return index_.count(std::string(name)) > 0; }

std::size_t Alphabet::index_of(std::string_view name) const {
  if (names_.size() <= 8) {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    throw UnknownAtom(std::string(name));
  }
  auto it = index_.find(std::string(name));
  if (it == index_.end()) throw UnknownAtom(std::string(name));
  return it->second;
}

void check_atoms(const Formula& f, const Alphabet& alphabet) {
  for (const auto& a : atoms(f)) alphabet.index_of(a);
}

}  // namespace divplan::ltl
