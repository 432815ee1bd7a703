#include "divplan/pddl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace divplan::pddl {

PddlError::PddlError(const std::string& what, SourceLoc loc)
    : Error("line " + std::to_string(loc.line) + ", column " + std::to_string(loc.column) +
            ": " + what),
      loc_(loc) {}

const PredicateDecl* DomainAst::find_predicate(const std::string& n) const {
  for (const auto& p : predicates)
    if (p.name == n) return &p;
  return nullptr;
}

bool DomainAst::has_type(const std::string& n) const {
  if (n == "object") return true;
  return std::any_of(types.begin(), types.end(), [&](const TypedName& t) { return t.name == n; });
}

namespace {

struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  SourceLoc loc;

  bool is_symbol(std::string_view s) const { return !is_list && atom == s; }
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  SExpr read_toplevel() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("empty input", here());
    SExpr e = read();
    skip_ws();
    if (pos_ < text_.size()) throw SyntaxError("trailing content after definition", here());
    return e;
  }

 private:
  SourceLoc here() const { return {line_, col_}; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    skip_ws();
    if (pos_ >= text_.size()) throw SyntaxError("unexpected end of input", here());
    SExpr e;
    e.loc = here();
    char c = text_[pos_];
    if (c == ')') throw SyntaxError("unexpected ')'", here());
    if (c == '(') {
      e.is_list = true;
      advance();
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError("unbalanced '('", e.loc);
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == ';') break;
      e.atom += static_cast<char>(std::tolower(static_cast<unsigned char>(d)));
      advance();
    }
    return e;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

const SExpr& expect_list(const SExpr& e, const char* what) {
  if (!e.is_list) throw SyntaxError(std::string("expected ") + what, e.loc);
  return e;
}

const std::string& expect_symbol(const SExpr& e, const char* what) {
  if (e.is_list || e.atom.empty()) throw SyntaxError(std::string("expected ") + what, e.loc);
  return e.atom;
}

bool is_variable(const std::string& s) { return !s.empty() && s[0] == '?'; }

// "a b - t c" style list.
std::vector<TypedName> parse_typed_list(const std::vector<SExpr>& items, std::size_t from,
                                        bool variables) {
  std::vector<TypedName> out;
  std::size_t pending = 0;
  for (std::size_t i = from; i < items.size(); ++i) {
    const auto& it = items[i];
    if (it.is_list) {
      if (!it.items.empty() && it.items[0].is_symbol("either"))
        throw UnsupportedFeature("'either' types are not supported", it.loc);
      throw SyntaxError("unexpected list in typed list", it.loc);
    }
    if (it.atom == "-") {
      if (i + 1 >= items.size()) throw SyntaxError("missing type after '-'", it.loc);
      const auto& ty = items[++i];
      if (ty.is_list) {
        if (!ty.items.empty() && ty.items[0].is_symbol("either"))
          throw UnsupportedFeature("'either' types are not supported", ty.loc);
        throw SyntaxError("expected a type name", ty.loc);
      }
      if (pending == 0) throw SyntaxError("type without names", it.loc);
      for (std::size_t k = out.size() - pending; k < out.size(); ++k) out[k].type = ty.atom;
      pending = 0;
      continue;
    }
    if (variables != is_variable(it.atom))
      throw SyntaxError(variables ? "expected a variable" : "unexpected variable", it.loc);
    out.push_back({it.atom, "object", it.loc});
    ++pending;
  }
  return out;
}

Atom parse_atom(const SExpr& e) {
  expect_list(e, "an atom");
  if (e.items.empty()) throw SyntaxError("empty atom", e.loc);
  Atom a;
  a.predicate = expect_symbol(e.items[0], "a predicate name");
  a.loc = e.loc;
  for (std::size_t i = 1; i < e.items.size(); ++i)
    a.args.push_back(expect_symbol(e.items[i], "a term"));
  return a;
}

const std::set<std::string> kFormulaKeywords = {"and", "or", "not", "exists", "forall",
                                                 "imply", "when", "increase", "decrease",
                                                 "assign", "scale-up", "scale-down"};

void reject_keyword(const SExpr& e, const char* context) {
  if (e.is_list && !e.items.empty() && !e.items[0].is_list &&
      kFormulaKeywords.count(e.items[0].atom))
    throw UnsupportedFeature("'" + e.items[0].atom + "' is not supported in " + context, e.loc);
}

Literal parse_literal(const SExpr& e, const char* context) {
  expect_list(e, "a literal");
  if (!e.items.empty() && e.items[0].is_symbol("not")) {
    if (e.items.size() != 2) throw SyntaxError("'not' takes one argument", e.loc);
    reject_keyword(e.items[1], context);
    return {parse_atom(e.items[1]), false};
  }
  reject_keyword(e, context);
  return {parse_atom(e), true};
}

std::vector<Literal> parse_conjunction(const SExpr& e, const char* context) {
  expect_list(e, "a formula");
  if (e.items.empty()) return {};
  if (e.items[0].is_symbol("and")) {
    std::vector<Literal> out;
    for (std::size_t i = 1; i < e.items.size(); ++i) {
      const auto& sub = e.items[i];
      if (sub.is_list && !sub.items.empty() && sub.items[0].is_symbol("and")) {
        auto nested = parse_conjunction(sub, context);
        out.insert(out.end(), nested.begin(), nested.end());
      } else {
        out.push_back(parse_literal(sub, context));
      }
    }
    return out;
  }
  return {parse_literal(e, context)};
}

Condition parse_condition(const SExpr& e) {
  expect_list(e, "a goal formula");
  Condition c;
  c.loc = e.loc;
  if (e.items.empty()) return c;  // empty conjunction
  const auto& head = e.items[0];
  if (head.is_symbol("and") || head.is_symbol("or")) {
    c.kind = head.atom == "and" ? Condition::Kind::And : Condition::Kind::Or;
    for (std::size_t i = 1; i < e.items.size(); ++i) c.children.push_back(parse_condition(e.items[i]));
    return c;
  }
  if (head.is_symbol("not")) {
    if (e.items.size() != 2) throw SyntaxError("'not' takes one argument", e.loc);
    c.kind = Condition::Kind::Not;
    c.children.push_back(parse_condition(e.items[1]));
    return c;
  }
  if (head.is_symbol("exists")) {
    if (e.items.size() != 3) throw SyntaxError("'exists' takes a variable list and a body", e.loc);
    c.kind = Condition::Kind::Exists;
    c.vars = parse_typed_list(expect_list(e.items[1], "a variable list").items, 0, true);
    c.children.push_back(parse_condition(e.items[2]));
    return c;
  }
  reject_keyword(e, "goals");
  c.kind = Condition::Kind::Atom;
  c.atom = parse_atom(e);
  return c;
}

const std::set<std::string> kSupportedRequirements = {
    ":strips", ":typing", ":negative-preconditions", ":equality",
    ":existential-preconditions", ":disjunctive-preconditions"};

// Header "(define (domain NAME) ...)"; returns the body items.
const std::vector<SExpr>& definition_body(const SExpr& root, const char* kind, std::string& name) {
  expect_list(root, "'(define ...)'");
  if (root.items.size() < 2 || !root.items[0].is_symbol("define"))
    throw SyntaxError("expected '(define ...)'", root.loc);
  const auto& header = expect_list(root.items[1], "a definition header");
  if (header.items.size() != 2 || !header.items[0].is_symbol(kind))
    throw SyntaxError(std::string("expected '(") + kind + " NAME)'", header.loc);
  name = expect_symbol(header.items[1], "a name");
  return root.items;
}

class DomainChecker {
 public:
  explicit DomainChecker(const DomainAst& d) : d_(d) {}

  void check() {
    std::set<std::string> seen_types{"object"};
    for (const auto& t : d_.types) {
      if (!seen_types.insert(t.name).second) throw SyntaxError("duplicate type '" + t.name + "'", t.loc);
    }
    for (const auto& t : d_.types)
      if (!d_.has_type(t.type)) throw SyntaxError("undeclared type '" + t.type + "'", t.loc);
    for (const auto& c : d_.constants)
      if (!d_.has_type(c.type)) throw SyntaxError("undeclared type '" + c.type + "'", c.loc);
    std::set<std::string> preds;
    for (const auto& p : d_.predicates) {
      if (!preds.insert(p.name).second) throw SyntaxError("duplicate predicate '" + p.name + "'", p.loc);
      for (const auto& a : p.params)
        if (!d_.has_type(a.type)) throw SyntaxError("undeclared type '" + a.type + "'", a.loc);
    }
    std::set<std::string> names;
    for (const auto& act : d_.actions) {
      if (!names.insert(act.name).second) throw SyntaxError("duplicate action '" + act.name + "'", act.loc);
      std::map<std::string, std::string> scope;
      for (const auto& p : act.params) {
        if (!d_.has_type(p.type)) throw SyntaxError("undeclared type '" + p.type + "'", p.loc);
        if (!scope.emplace(p.name, p.type).second)
          throw SyntaxError("duplicate parameter '" + p.name + "'", p.loc);
      }
      for (const auto& l : act.precondition) check_atom(l.atom, scope, true);
      for (const auto& a : act.add) check_atom(a, scope, false);
      for (const auto& a : act.del) check_atom(a, scope, false);
    }
  }

  void check_atom(const Atom& a, const std::map<std::string, std::string>& scope,
                  bool allow_equality) const {
    if (a.predicate == "=") {
      if (!allow_equality) throw SyntaxError("equality cannot appear in effects", a.loc);
      if (a.args.size() != 2) throw SyntaxError("'=' takes two arguments", a.loc);
    } else {
      const auto* decl = d_.find_predicate(a.predicate);
      if (!decl) throw SyntaxError("undeclared predicate '" + a.predicate + "'", a.loc);
      if (decl->params.size() != a.args.size())
        throw SyntaxError("predicate '" + a.predicate + "' expects " +
                              std::to_string(decl->params.size()) + " arguments",
                          a.loc);
    }
    for (const auto& arg : a.args) {
      if (is_variable(arg)) {
        if (!scope.count(arg)) throw SyntaxError("unbound variable '" + arg + "'", a.loc);
      } else if (!std::any_of(d_.constants.begin(), d_.constants.end(),
                              [&](const TypedName& c) { return c.name == arg; })) {
        throw SyntaxError("undeclared constant '" + arg + "'", a.loc);
      }
    }
  }

 private:
  const DomainAst& d_;
};

}  // namespace

DomainAst parse_domain(std::string_view text) {
  SExpr root = Reader(text).read_toplevel();
  DomainAst d;
  const auto& items = definition_body(root, "domain", d.name);
  for (std::size_t i = 2; i < items.size(); ++i) {
    const auto& sec = expect_list(items[i], "a domain section");
    if (sec.items.empty()) throw SyntaxError("empty section", sec.loc);
    const auto& key = expect_symbol(sec.items[0], "a section keyword");
    if (key == ":requirements") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& r = expect_symbol(sec.items[k], "a requirement");
        if (!kSupportedRequirements.count(r))
          throw UnsupportedFeature("requirement '" + r + "' is outside the supported subset",
                                   sec.items[k].loc);
        d.requirements.push_back(r);
      }
    } else if (key == ":types") {
      d.types = parse_typed_list(sec.items, 1, false);
    } else if (key == ":constants") {
      d.constants = parse_typed_list(sec.items, 1, false);
    } else if (key == ":predicates") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& p = expect_list(sec.items[k], "a predicate declaration");
        if (p.items.empty()) throw SyntaxError("empty predicate declaration", p.loc);
        PredicateDecl decl;
        decl.name = expect_symbol(p.items[0], "a predicate name");
        decl.params = parse_typed_list(p.items, 1, true);
        decl.loc = p.loc;
        d.predicates.push_back(std::move(decl));
      }
    } else if (key == ":action") {
      ActionSchema act;
      act.loc = sec.loc;
      if (sec.items.size() < 2) throw SyntaxError("action without a name", sec.loc);
      act.name = expect_symbol(sec.items[1], "an action name");
      for (std::size_t k = 2; k < sec.items.size(); k += 2) {
        const auto& field = expect_symbol(sec.items[k], "an action field");
        if (k + 1 >= sec.items.size()) throw SyntaxError("missing value for " + field, sec.items[k].loc);
        const auto& value = sec.items[k + 1];
        if (field == ":parameters") {
          act.params = parse_typed_list(expect_list(value, "a parameter list").items, 0, true);
        } else if (field == ":precondition") {
          act.precondition = parse_conjunction(value, "preconditions");
        } else if (field == ":effect") {
          for (auto& lit : parse_conjunction(value, "effects"))
            (lit.positive ? act.add : act.del).push_back(std::move(lit.atom));
        } else {
          throw UnsupportedFeature("action field '" + field + "' is not supported", sec.items[k].loc);
        }
      }
      d.actions.push_back(std::move(act));
    } else if (key == ":functions" || key == ":durative-action" || key == ":derived" ||
               key == ":constraints") {
      throw UnsupportedFeature("section '" + key + "' is not supported", sec.loc);
    } else {
      throw SyntaxError("unknown domain section '" + key + "'", sec.loc);
    }
  }
  DomainChecker(d).check();
  return d;
}

ProblemAst parse_problem(std::string_view text) {
  SExpr root = Reader(text).read_toplevel();
  ProblemAst p;
  p.goal.kind = Condition::Kind::And;
  bool has_goal = false;
  const auto& items = definition_body(root, "problem", p.name);
  for (std::size_t i = 2; i < items.size(); ++i) {
    const auto& sec = expect_list(items[i], "a problem section");
    if (sec.items.empty()) throw SyntaxError("empty section", sec.loc);
    const auto& key = expect_symbol(sec.items[0], "a section keyword");
    if (key == ":domain") {
      if (sec.items.size() != 2) throw SyntaxError("expected '(:domain NAME)'", sec.loc);
      p.domain_name = expect_symbol(sec.items[1], "a domain name");
    } else if (key == ":objects") {
      p.objects = parse_typed_list(sec.items, 1, false);
    } else if (key == ":init") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& e = sec.items[k];
        if (e.is_list && !e.items.empty() && e.items[0].is_symbol("not")) continue;  // closed world
        if (e.is_list && !e.items.empty() && e.items[0].is_symbol("="))
          throw UnsupportedFeature("numeric initial values are not supported", e.loc);
        p.init.push_back(parse_atom(e));
      }
    } else if (key == ":goal") {
      if (sec.items.size() != 2) throw SyntaxError("expected '(:goal FORMULA)'", sec.loc);
      p.goal = parse_condition(sec.items[1]);
      has_goal = true;
    } else if (key == ":requirements") {
      for (std::size_t k = 1; k < sec.items.size(); ++k) {
        const auto& r = expect_symbol(sec.items[k], "a requirement");
        if (!kSupportedRequirements.count(r))
          throw UnsupportedFeature("requirement '" + r + "' is outside the supported subset",
                                   sec.items[k].loc);
      }
    } else if (key == ":metric" || key == ":constraints") {
      throw UnsupportedFeature("section '" + key + "' is not supported", sec.loc);
    } else {
      throw SyntaxError("unknown problem section '" + key + "'", sec.loc);
    }
  }
  if (p.domain_name.empty()) throw SyntaxError("problem does not name its domain", root.loc);
  if (!has_goal) throw SyntaxError("problem has no goal", root.loc);
  return p;
}

namespace {

void check_condition(const Condition& c, const DomainAst& d,
                     std::map<std::string, std::string>& scope,
                     const std::set<std::string>& objects) {
  switch (c.kind) {
    case Condition::Kind::Atom: {
      const auto& a = c.atom;
      if (a.predicate == "=") {
        if (a.args.size() != 2) throw SyntaxError("'=' takes two arguments", a.loc);
      } else {
        const auto* decl = d.find_predicate(a.predicate);
        if (!decl) throw SyntaxError("undeclared predicate '" + a.predicate + "'", a.loc);
        if (decl->params.size() != a.args.size())
          throw SyntaxError("predicate '" + a.predicate + "' expects " +
                                std::to_string(decl->params.size()) + " arguments",
                            a.loc);
      }
      for (const auto& arg : a.args) {
        if (is_variable(arg)) {
          if (!scope.count(arg)) throw SyntaxError("unbound variable '" + arg + "'", a.loc);
        } else if (!objects.count(arg)) {
          throw SyntaxError("undeclared object '" + arg + "'", a.loc);
        }
      }
      break;
    }
    case Condition::Kind::Exists: {
      auto saved = scope;
      for (const auto& v : c.vars) {
        if (!d.has_type(v.type)) throw UndeclaredObjectType("undeclared type '" + v.type + "'", v.loc);
        scope[v.name] = v.type;
      }
      for (const auto& ch : c.children) check_condition(ch, d, scope, objects);
      scope = std::move(saved);
      break;
    }
    default:
      for (const auto& ch : c.children) check_condition(ch, d, scope, objects);
  }
}

}  // namespace

void check_problem(const ProblemAst& p, const DomainAst& d) {
  if (p.domain_name != d.name)
    throw SyntaxError("problem refers to domain '" + p.domain_name + "' but '" + d.name +
                          "' was given",
                      {});
  std::set<std::string> objects;
  for (const auto& c : d.constants) objects.insert(c.name);
  for (const auto& o : p.objects) {
    if (!d.has_type(o.type))
      throw UndeclaredObjectType("object '" + o.name + "' has undeclared type '" + o.type + "'", o.loc);
    if (!objects.insert(o.name).second) throw SyntaxError("duplicate object '" + o.name + "'", o.loc);
  }
  for (const auto& a : p.init) {
    const auto* decl = d.find_predicate(a.predicate);
    if (!decl) throw SyntaxError("undeclared predicate '" + a.predicate + "'", a.loc);
    if (decl->params.size() != a.args.size())
      throw SyntaxError("predicate '" + a.predicate + "' expects " +
                            std::to_string(decl->params.size()) + " arguments",
                        a.loc);
    for (const auto& arg : a.args)
      if (!objects.count(arg)) throw SyntaxError("undeclared object '" + arg + "'", a.loc);
  }
  std::map<std::string, std::string> scope;
  check_condition(p.goal, d, scope, objects);
}

namespace {

std::string typed_list(const std::vector<TypedName>& names) {
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i) out += ' ';
    out += names[i].name;
    bool last_of_group = i + 1 == names.size() || names[i + 1].type != names[i].type;
    if (last_of_group) out += " - " + names[i].type;
  }
  return out;
}

std::string atom_text(const Atom& a) {
  std::string out = "(" + a.predicate;
  for (const auto& arg : a.args) out += " " + arg;
  return out + ")";
}

std::string literal_text(const Literal& l) {
  return l.positive ? atom_text(l.atom) : "(not " + atom_text(l.atom) + ")";
}

std::string condition_text(const Condition& c) {
  switch (c.kind) {
    case Condition::Kind::Atom:
      return atom_text(c.atom);
    case Condition::Kind::Not:
      return "(not " + condition_text(c.children.at(0)) + ")";
    case Condition::Kind::Exists:
      return "(exists (" + typed_list(c.vars) + ") " + condition_text(c.children.at(0)) + ")";
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      std::string out = c.kind == Condition::Kind::And ? "(and" : "(or";
      for (const auto& ch : c.children) out += " " + condition_text(ch);
      return out + ")";
    }
  }
  return {};
}

}  // namespace

std::string to_pddl(const DomainAst& d) {
  std::ostringstream out;
  out << "(define (domain " << d.name << ")\n";
  if (!d.requirements.empty()) {
    out << "  (:requirements";
    for (const auto& r : d.requirements) out << ' ' << r;
    out << ")\n";
  }
  if (!d.types.empty()) out << "  (:types " << typed_list(d.types) << ")\n";
  if (!d.constants.empty()) out << "  (:constants " << typed_list(d.constants) << ")\n";
  out << "  (:predicates";
  for (const auto& p : d.predicates) {
    out << "\n    (" << p.name;
    if (!p.params.empty()) out << ' ' << typed_list(p.params);
    out << ')';
  }
  out << ")\n";
  for (const auto& a : d.actions) {
    out << "  (:action " << a.name << "\n    :parameters (" << typed_list(a.params) << ")\n";
    out << "    :precondition (and";
    for (const auto& l : a.precondition) out << ' ' << literal_text(l);
    out << ")\n    :effect (and";
    for (const auto& e : a.add) out << ' ' << atom_text(e);
    for (const auto& e : a.del) out << " (not " << atom_text(e) << ')';
    out << "))\n";
  }
  out << ")\n";
  return out.str();
}

std::string to_pddl(const ProblemAst& p) {
  std::ostringstream out;
  out << "(define (problem " << p.name << ")\n  (:domain " << p.domain_name << ")\n";
  out << "  (:objects " << typed_list(p.objects) << ")\n  (:init";
  for (const auto& a : p.init) out << "\n    " << atom_text(a);
  out << ")\n  (:goal " << condition_text(p.goal) << "))\n";
  return out.str();
}

}  // namespace divplan::pddl
