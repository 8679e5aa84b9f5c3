// SPDX-License-Identifier: Apache-2.0

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "msmp/error.hpp"
#include "msmp/oracle.hpp"

namespace msmp {

namespace {

std::string shellQuote(const std::string& s) {
  std::string out = "'";
  for (char ch : s) {
    if (ch == '\'')
      out += "'\\''";
    else
      out += ch;
  }
  return out + "'";
}

std::string makeTempPath() {
  std::string tmpl = (std::filesystem::temp_directory_path() / "msmp-XXXXXX.cnf").string();
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  int fd = ::mkstemps(buf.data(), 4);
  if (fd < 0) throw OracleError("cannot create temporary file for external solver");
  ::close(fd);
  return std::string(buf.data());
}

}  // namespace

ExternalOracle::ExternalOracle(std::string executable) : executable_(std::move(executable)) {}
ExternalOracle::~ExternalOracle() = default;

void ExternalOracle::reserveVars(std::uint32_t n) { numVars_ = std::max(numVars_, n); }

void ExternalOracle::addClause(std::span<const Lit> lits) {
  for (Lit l : lits) {
    if (l.var().id == 0) throw UsageError("variable id 0 in clause");
    numVars_ = std::max(numVars_, l.var().id);
  }
  clauses_.emplace_back(lits.begin(), lits.end());
}

SolveOutcome ExternalOracle::doSolve(std::span<const Lit> assumptions) {
  for (Lit l : assumptions) numVars_ = std::max(numVars_, l.var().id);

  std::string path = makeTempPath();
  {
    std::ofstream out(path);
    out << "p cnf " << numVars_ << ' ' << clauses_.size() + assumptions.size() << '\n';
    for (const auto& c : clauses_) {
      for (Lit l : c) out << l.toDimacs() << ' ';
      out << "0\n";
    }
    for (Lit l : assumptions) out << l.toDimacs() << " 0\n";
    if (!out) {
      std::filesystem::remove(path);
      throw OracleError("cannot write temporary file for external solver");
    }
  }

  std::string command = shellQuote(executable_) + ' ' + shellQuote(path) + " 2>/dev/null";
  std::FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) {
    std::filesystem::remove(path);
    throw OracleError("cannot start external solver " + executable_);
  }
  std::string captured;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) captured.append(buf, n);
  ::pclose(pipe);
  std::filesystem::remove(path);

  auto fail = [&](const std::string& why) -> OracleError {
    return OracleError("external solver " + executable_ + ": " + why + "; output:\n" + captured);
  };

  std::optional<SolveStatus> status;
  std::vector<Lit> model;
  bool modelDone = false;
  std::istringstream lines(captured);
  std::string line;
  while (std::getline(lines, line)) {
    std::istringstream toks(line);
    std::string head;
    if (!(toks >> head)) continue;
    if (head == "s") {
      std::string word;
      toks >> word;
      if (word == "SATISFIABLE")
        status = SolveStatus::Sat;
      else if (word == "UNSATISFIABLE")
        status = SolveStatus::Unsat;
      else
        throw fail("unrecognized status line '" + line + "'");
    } else if (head == "v") {
      long long value;
      while (toks >> value) {
        if (value == 0) {
          modelDone = true;
          break;
        }
        if (std::llabs(value) > numVars_) continue;
        model.push_back(Lit::fromDimacs(static_cast<int>(value)));
      }
    }
  }
  if (!status) throw fail("no status line");

  SolveOutcome outcome;
  outcome.status = *status;
  if (*status == SolveStatus::Unsat) return outcome;
  if (!modelDone && numVars_ > 0) throw fail("model not terminated by 0");

  Assignment a(numVars_);
  try {
    for (Lit l : model) a.set(l);
  } catch (const UsageError&) {
    throw fail("inconsistent model");
  }
  // Variables the solver left out are irrelevant; fix them false.
  for (std::uint32_t v = 1; v <= numVars_; ++v)
    if (!a.value(Var{v})) a.assign(Var{v}, false);
  for (const auto& c : clauses_) {
    bool sat = false;
    for (Lit l : c) sat = sat || a.isTrue(l);
    if (!sat) throw fail("model falsifies a clause");
  }
  for (Lit l : assumptions)
    if (!a.isTrue(l)) throw fail("model falsifies an assumption");
  outcome.witness = std::move(a);
  return outcome;
}

}  // namespace msmp
