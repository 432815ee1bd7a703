#include <doctest.h>

#include <cstdlib>
#include <random>
#include <sstream>

#include "divplan/sat/dimacs.hpp"
#include "divplan/sat/solver.hpp"

using namespace divplan::sat;

namespace {

bool satisfies(const Cnf& cnf, const Model& m) {
  for (const auto& c : cnf.clauses) {
    bool ok = false;
    for (int l : c) ok = ok || (l > 0 ? m[l] : !m[-l]);
    if (!ok) return false;
  }
  return true;
}

// Truth-table satisfiability.
bool brute_sat(const Cnf& cnf) {
  for (std::uint32_t bits = 0; bits < (1u << cnf.num_vars); ++bits) {
    Model m(cnf.num_vars + 1);
    for (int v = 1; v <= cnf.num_vars; ++v) m[v] = bits >> (v - 1) & 1u;
    if (satisfies(cnf, m)) return true;
  }
  return false;
}

Cnf random_3sat(std::mt19937& rng, int vars, int clauses) {
  Cnf cnf;
  cnf.num_vars = vars;
  for (int i = 0; i < clauses; ++i) {
    std::vector<int> c;
    for (int j = 0; j < 3; ++j) {
      int v = 1 + int(rng() % vars);
      c.push_back(rng() % 2 ? v : -v);
    }
    cnf.add(c);
  }
  return cnf;
}

// p pigeons into p-1 holes.
Cnf pigeonhole(int p) {
  Cnf cnf;
  int h = p - 1;
  auto var = [&](int i, int j) { return 1 + i * h + j; };
  cnf.num_vars = p * h;
  for (int i = 0; i < p; ++i) {
    std::vector<int> c;
    for (int j = 0; j < h; ++j) c.push_back(var(i, j));
    cnf.add(c);
  }
  for (int j = 0; j < h; ++j)
    for (int a = 0; a < p; ++a)
      for (int b = a + 1; b < p; ++b) cnf.add({-var(a, j), -var(b, j)});
  return cnf;
}

std::string external_solver() {
  std::string script = std::string(DIVPLAN_TEST_TOOLS) + "/pysat_solver.py";
  if (std::system("python3 -c 'import pysat' >/dev/null 2>&1") != 0) return {};
  return script;
}

}  // namespace

TEST_SUITE("sat") {

TEST_CASE("trivial instances") {
  Cnf empty;
  CHECK(solve(empty).has_value());
  Cnf contradiction;
  contradiction.num_vars = 1;
  contradiction.add({1});
  contradiction.add({-1});
  CHECK_FALSE(solve(contradiction).has_value());
  Cnf empty_clause;
  empty_clause.num_vars = 1;
  empty_clause.add({});
  CHECK_FALSE(solve(empty_clause).has_value());
  Cnf unit;
  unit.num_vars = 3;
  unit.add({-2});
  unit.add({2, 3});
  auto m = solve(unit);
  REQUIRE(m);
  CHECK_FALSE((*m)[2]);
  CHECK((*m)[3]);
}

TEST_CASE("pigeonhole is unsatisfiable") {
  for (int p = 2; p <= 6; ++p) CHECK_FALSE(solve(pigeonhole(p)).has_value());
}

TEST_CASE("random 3-SAT agrees with the truth table") {
  std::mt19937 rng(11);
  int sat = 0, unsat = 0;
  for (int i = 0; i < 400; ++i) {
    int vars = 3 + int(rng() % 10);
    auto cnf = random_3sat(rng, vars, int(vars * (3.0 + (rng() % 300) / 100.0)));
    auto m = solve(cnf);
    bool expected = brute_sat(cnf);
    CHECK(m.has_value() == expected);
    if (m) {
      CHECK(satisfies(cnf, *m));
      ++sat;
    } else {
      ++unsat;
    }
  }
  CHECK(sat > 50);
  CHECK(unsat > 50);
}

TEST_CASE("same clauses and seed give the same model") {
  std::mt19937 rng(3);
  auto cnf = random_3sat(rng, 40, 120);
  auto a = solve(cnf), b = solve(cnf);
  CHECK(a == b);
}

TEST_CASE("conflict limit raises ResourceLimit") {
  SolverOptions opt;
  opt.conflict_limit = 5;
  CHECK_THROWS_AS(solve(pigeonhole(8), opt), ResourceLimit);
}

TEST_CASE("DIMACS roundtrip") {
  std::mt19937 rng(5);
  auto cnf = random_3sat(rng, 12, 40);
  std::stringstream ss;
  write_dimacs(ss, cnf);
  auto back = read_dimacs(ss);
  CHECK(back.num_vars == cnf.num_vars);
  CHECK(back.clauses == cnf.clauses);

  std::istringstream commented("c hello\np cnf 3 2\n1 -2 0\n2 3\n0\n");
  auto c2 = read_dimacs(commented);
  CHECK(c2.clauses == std::vector<std::vector<int>>{{1, -2}, {2, 3}});

  std::istringstream bad1("1 2 0\n");
  CHECK_THROWS_AS(read_dimacs(bad1), DimacsError);
  std::istringstream bad2("p cnf 2 1\n1 5 0\n");
  CHECK_THROWS_AS(read_dimacs(bad2), DimacsError);
  std::istringstream bad3("p cnf 2 2\n1 0\n");
  CHECK_THROWS_AS(read_dimacs(bad3), DimacsError);
}

TEST_CASE("solver output parsing") {
  auto m = parse_solver_output("c x\ns SATISFIABLE\nv 1 -2\nv 3 0\n", 3);
  REQUIRE(m);
  CHECK(*m == Model{false, true, false, true});
  CHECK_FALSE(parse_solver_output("s UNSATISFIABLE\n", 3).has_value());
  CHECK_THROWS_AS(parse_solver_output("v 1 0\n", 1), DimacsError);
  CHECK_THROWS_AS(parse_solver_output("s UNKNOWN\n", 1), DimacsError);
}

TEST_CASE("external solver agrees") {
  auto cmd = external_solver();
  if (cmd.empty()) {
    MESSAGE("python-sat not available; skipping");
    return;
  }
  std::mt19937 rng(17);
  for (int i = 0; i < 15; ++i) {
    auto cnf = random_3sat(rng, 10, 42);
    auto ours = solve(cnf);
    auto theirs = solve_external(cnf, cmd);
    CHECK(ours.has_value() == theirs.has_value());
    if (theirs) CHECK(satisfies(cnf, *theirs));
  }
  CHECK_FALSE(solve_external(pigeonhole(5), cmd).has_value());
}

}
