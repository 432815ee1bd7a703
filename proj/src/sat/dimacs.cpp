#include "divplan/sat/dimacs.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <unistd.h>

namespace divplan::sat {

void write_dimacs(std::ostream& out, const Cnf& cnf) {
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
}

Cnf read_dimacs(std::istream& in) {
  Cnf cnf;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      std::string fmt;
      if (!(ls >> fmt >> cnf.num_vars >> declared_clauses) || fmt != "cnf")
        throw DimacsError("malformed DIMACS header: " + line);
      header = true;
      continue;
    }
    if (!header) throw DimacsError("clause before DIMACS header");
    std::istringstream cs(line);
    for (long long lit; cs >> lit;) {
      if (lit == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::llabs(lit) > cnf.num_vars) throw DimacsError("literal exceeds declared variable count");
        current.push_back(static_cast<int>(lit));
      }
    }
    if (!cs.eof()) throw DimacsError("non-numeric token in clause line: " + line);
  }
  if (!header) throw DimacsError("missing DIMACS header");
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  if (cnf.clauses.size() != declared_clauses)
    throw DimacsError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                      std::to_string(cnf.clauses.size()));
  return cnf;
}

std::optional<Model> parse_solver_output(std::string_view text, int num_vars) {
  std::istringstream in{std::string(text)};
  std::optional<bool> status;
  Model model(static_cast<std::size_t>(num_vars) + 1, false);
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "s") {
      std::string word;
      ls >> word;
      if (word == "SATISFIABLE") status = true;
      else if (word == "UNSATISFIABLE") status = false;
      else throw DimacsError("solver reported status '" + word + "'");
    } else if (tag == "v") {
      for (long long lit; ls >> lit;) {
        if (lit == 0) break;
        auto v = std::llabs(lit);
        if (v > num_vars) throw DimacsError("model literal out of range");
        model[static_cast<std::size_t>(v)] = lit > 0;
      }
    }
  }
  if (!status) throw DimacsError("solver output has no status line");
  if (!*status) return std::nullopt;
  return model;
}

std::optional<Model> solve_external(const Cnf& cnf, const std::string& command) {
  static std::atomic<int> counter{0};
  namespace fs = std::filesystem;
  auto stem = "divplan-" + std::to_string(::getpid()) + "-" + std::to_string(counter++);
  fs::path cnf_path = fs::temp_directory_path() / (stem + ".cnf");
  fs::path out_path = fs::temp_directory_path() / (stem + ".out");
  {
    std::ofstream f(cnf_path);
    write_dimacs(f, cnf);
  }
  std::string cmd = "'" + command + "' '" + cnf_path.string() + "' > '" + out_path.string() + "' 2>/dev/null";
  int rc = std::system(cmd.c_str());
  (void)rc;  // competition solvers exit with 10/20
  std::ifstream f(out_path);
  std::stringstream buf;
  buf << f.rdbuf();
  std::error_code ec;
  fs::remove(cnf_path, ec);
  fs::remove(out_path, ec);
  return parse_solver_output(buf.str(), cnf.num_vars);
}

}  // namespace divplan::sat
