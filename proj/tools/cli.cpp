// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "msmp/answer_io.hpp"
#include "msmp/error.hpp"
#include "msmp/generator.hpp"
#include "msmp/parser.hpp"
#include "msmp/reductions.hpp"
#include "msmp/verifier.hpp"

namespace msmp::cli {

namespace {

struct Options {
  std::string input;
  std::string alg = "progression";
  std::string solver;
  std::string stats;
  std::string format = "auto";
  std::string term;
  std::string clause;
  std::string target;
  std::string candidates;
  std::string model;
  std::string autForm = "l";
  std::size_t unitIndex = 0;
  std::uint64_t seed = 0;
  bool verify = false;
  bool assumeWellPosed = false;
  bool noTime = false;
};

void addProblemOptions(CLI::App& app, Options& o) {
  app.add_option("input", o.input, "Input file (DIMACS, p dnf, GCNF, WCNF or prefix formula)")
      ->required();
  app.add_option("--alg", o.alg,
                 "deletion | insertion | dichotomic | quickxplain | progression")
      ->capture_default_str();
  app.add_option("--solver", o.solver, "internal | exec:PATH (MSMP_SOLVER overrides)");
  app.add_option("--seed", o.seed, "Solver seed")->capture_default_str();
  app.add_flag("--verify", o.verify, "Re-check minimality of the result");
  app.add_flag("--assume-wellposed", o.assumeWellPosed, "Skip precondition checks");
  app.add_option("--stats", o.stats, "Print statistics: plain | json");
  app.add_option("--format", o.format, "auto | dimacs | dnf | gcnf | wcnf | fml")
      ->capture_default_str();
  app.add_option("--term", o.term, "Reference term t, DIMACS literals (pit)");
  app.add_option("--clause", o.clause, "Reference clause c, DIMACS literals (pic)");
  app.add_option("--unit-index", o.unitIndex, "1-based index of the term/clause to extend (leit, leic)");
  app.add_option("--target", o.target, "Target formula I (mnes)");
  app.add_option("--candidates", o.candidates, "Candidate clause set N (mxes)");
  app.add_option("--model", o.model, "Reference model V as \"v ... 0\" lines (backbone)");
  app.add_option("--aut-form", o.autForm, "l | b (autarky)")->capture_default_str();
  app.add_flag("--no-time", o.noTime, "Report time as 0 for reproducible output");
}

std::string usage() {
  std::ostringstream os;
  os << "usage: msmp <problem> INPUT [options]\n"
        "       msmp check <problem> INPUT [options]\n"
        "       msmp bench [options]\n"
        "       msmp gen [options]\n\n"
        "problems:";
  for (ProblemKind k : kAllProblemKinds) os << ' ' << kindCliName(k);
  os << "\n\nRun `msmp <command> --help` for the options of a command.\n";
  return os.str();
}

/// CLI11 expects the arguments in reverse order.
void parseArgs(CLI::App& app, const std::vector<std::string>& args) {
  std::vector<std::string> rev(args.rbegin(), args.rend());
  app.parse(rev);
}

int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const IllPosedError& e) {
    err << "error: ill-posed instance: " << e.what() << '\n';
    return kIllPosed;
  } catch (const ParseError& e) {
    err << "error: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const BudgetError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const OracleError& e) {
    err << "error: oracle failure: " << e.what() << '\n';
    return kInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

Formula formulaOf(const LoadedInput& in) {
  return std::visit(
      [](const auto& f) -> Formula {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, CnfFormula>)
          return fromCnf(f);
        else if constexpr (std::is_same_v<T, DnfFormula>)
          return fromDnf(f);
        else
          return f;
      },
      in.formula);
}

ProblemInstance loadInstance(ProblemKind kind, const Options& o) {
  LoadedInput in = parseInput(readFile(o.input), parseFormatName(o.format));
  ProblemInstance inst;
  inst.formula = in.formula;
  inst.numVars = in.numVars;
  inst.groups = in.groups;

  if (!o.term.empty()) inst.term = Term::make(parseLiteralList(o.term));
  if (!o.clause.empty()) inst.clause = Clause::make(parseLiteralList(o.clause));
  if (o.unitIndex > 0) inst.unitIndex = o.unitIndex - 1;
  if (!o.target.empty()) {
    LoadedInput t = parseInput(readFile(o.target));
    inst.target = formulaOf(t);
  }
  if (!o.candidates.empty()) {
    LoadedInput c = parseInput(readFile(o.candidates), InputFormat::Dimacs);
    inst.candidates = std::get<CnfFormula>(c.formula);
  }
  if (!o.model.empty()) {
    std::vector<Lit> lits = parseModelLines(readFile(o.model));
    std::uint32_t n = inst.numVars;
    for (Lit l : lits) n = std::max(n, l.var().id);
    inst.model = Assignment::fromLiterals(n, lits);
  }

  if ((kind == ProblemKind::FLEIt || kind == ProblemKind::FLEIc) && !inst.unitIndex)
    throw UsageError(std::string(kindCliName(kind)) + " needs --unit-index");
  if (kind == ProblemKind::FPIt && !inst.term) throw UsageError("pit needs --term");
  if (kind == ProblemKind::FPIc && !inst.clause) throw UsageError("pic needs --clause");
  if (kind == ProblemKind::FMnES && !inst.target) throw UsageError("mnes needs --target");
  if (kind == ProblemKind::FMxES && !inst.candidates) throw UsageError("mxes needs --candidates");
  return inst;
}

ProblemKind resolveKind(ProblemKind kind, const Options& o) {
  if (kind == ProblemKind::FAutL || kind == ProblemKind::FAutB) {
    if (o.autForm == "l") return ProblemKind::FAutL;
    if (o.autForm == "b") return ProblemKind::FAutB;
    throw UsageError("--aut-form must be l or b");
  }
  return kind;
}

int runProblem(ProblemKind kind, const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"Solve " + std::string(kindName(kind)), "msmp " + std::string(kindCliName(kind))};
  Options o;
  if (kind == ProblemKind::FAutB) o.autForm = "b";
  addProblemOptions(app, o);
  try {
    parseArgs(app, args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kParse;
  }

  return guarded(err, [&] {
    kind = resolveKind(kind, o);
    OracleSpec spec = resolveOracleSpec(o.solver);
    spec.options.seed = o.seed;
    OracleFactory factory = makeOracleFactory(spec);
    Algorithm alg = parseAlgorithm(o.alg);
    AnswerFormat fmt = o.stats.empty() ? AnswerFormat::Plain : parseAnswerFormat(o.stats);
    ProblemInstance inst = loadInstance(kind, o);

    auto t0 = std::chrono::steady_clock::now();
    ProblemAnswer ans = solve(kind, inst, factory, {alg, o.assumeWellPosed});
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    if (o.noTime) ms = 0.0;

    int code = kOk;
    if (o.verify) {
      std::string why = certifyMinimal(kind, inst, ans, factory);
      if (!why.empty()) {
        err << "error: minimality certificate failed: " << why << '\n';
        code = kInternal;
      }
    }
    if (ans.degenerate)
      err << "note: the reference unit is already covered by the other units; "
             "returning one maximal extension\n";

    out << writeAnswer(ans, fmt, {ms});
    if (fmt == AnswerFormat::Plain && !o.stats.empty()) {
      out << "c problem " << kindName(kind) << '\n'
          << "c algorithm " << algorithmName(alg) << '\n'
          << "c oracle_calls " << ans.oracleCalls() << '\n'
          << "c predicate_tests " << ans.engine.predicateTests() << '\n'
          << "c time_ms " << ms << '\n';
    }
    return code;
  });
}

int runCheck(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << "error: check needs a problem name\n";
    return kParse;
  }
  auto kindOpt = kindFromCliName(args.front());
  if (!kindOpt) {
    err << "error: unknown problem '" << args.front() << "'\n";
    return kParse;
  }
  CLI::App app{"Compare every algorithm against brute force", "msmp check"};
  Options o;
  addProblemOptions(app, o);
  try {
    parseArgs(app, std::vector<std::string>(args.begin() + 1, args.end()));
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kParse;
  }
  return guarded(err, [&] {
    ProblemKind kind = resolveKind(*kindOpt, o);
    OracleSpec spec = resolveOracleSpec(o.solver);
    spec.options.seed = o.seed;
    OracleFactory factory = makeOracleFactory(spec);
    ProblemInstance inst = loadInstance(kind, o);
    BruteResult expected = bruteSolve(kind, inst);

    std::size_t n = 0;
    bool allOk = true;
    std::vector<std::string> lines;
    for (Algorithm alg : kAllAlgorithms) {
      std::string desc = std::string(kindName(kind)) + " " + std::string(algorithmName(alg));
      bool ok = false;
      std::string why;
      try {
        ProblemAnswer ans = solve(kind, inst, factory, {alg, false});
        CheckResult cr = checkAnswer(ans, expected);
        ok = cr.ok;
        why = cr.reason;
        if (ok) {
          why = certifyMinimal(kind, inst, ans, factory);
          ok = why.empty();
        }
      } catch (const IllPosedError& e) {
        ok = expected.illPosed;
        why = ok ? "precondition rejected" : e.what();
        if (ok) desc += " (precondition rejected)";
      }
      if (!ok && !why.empty()) desc += ": " + why;
      allOk = allOk && ok;
      lines.push_back(tapLine(++n, ok, desc));
    }
    out << "1.." << n << '\n';
    for (const auto& l : lines) out << l << '\n';
    return allOk ? kOk : kInternal;
  });
}

int runGen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Generate a random instance", "msmp gen"};
  std::uint64_t seed = 0;
  GeneratorParams p;
  bool dnf = false;
  std::size_t planted = 0;
  app.add_option("--seed", seed)->capture_default_str();
  app.add_option("--min-vars", p.minVars)->capture_default_str();
  app.add_option("--max-vars", p.maxVars)->capture_default_str();
  app.add_option("--min-clauses", p.minClauses)->capture_default_str();
  app.add_option("--max-clauses", p.maxClauses)->capture_default_str();
  app.add_option("--min-len", p.minClauseLen)->capture_default_str();
  app.add_option("--max-len", p.maxClauseLen)->capture_default_str();
  app.add_flag("--dnf", dnf, "Emit a p dnf instance");
  app.add_option("--planted", planted, "Emit an FMUS instance of this size with a planted 2-clause MUS");
  try {
    parseArgs(app, args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kParse;
  }
  return guarded(err, [&] {
    if (planted > 0) {
      out << writeDimacs(plantedMus(planted, seed));
      return kOk;
    }
    InstanceGenerator gen(seed, p);
    if (dnf)
      out << writeDnf(gen.randomDnf());
    else
      out << writeDimacs(gen.randomCnf());
    return kOk;
  });
}

}  // namespace

bool callBound(const std::string& alg, std::size_t r, std::size_t m, std::uint64_t& bound) {
  auto ceilLog2 = [](double x) {
    std::uint64_t k = 0;
    while (static_cast<double>(std::uint64_t{1} << k) < x) ++k;
    return k;
  };
  const std::uint64_t mm = std::max<std::size_t>(m, 1);
  if (alg == "deletion") {
    bound = r;
  } else if (alg == "insertion") {
    bound = r * m + r;
  } else if (alg == "dichotomic") {
    bound = mm * (ceilLog2(static_cast<double>(r)) + 2);
  } else if (alg == "progression") {
    bound = 4 * mm * (1 + ceilLog2(1.0 + static_cast<double>(r) / static_cast<double>(mm)));
  } else {
    return false;
  }
  return true;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty()) {
    err << usage();
    return kParse;
  }
  const std::string& cmd = args.front();
  std::vector<std::string> rest(args.begin() + 1, args.end());
  if (cmd == "--help" || cmd == "-h" || cmd == "help") {
    out << usage();
    return kOk;
  }
  if (cmd == "bench") return runBench(rest, out, err);
  if (cmd == "check") return runCheck(rest, out, err);
  if (cmd == "gen") return runGen(rest, out, err);
  if (auto kind = kindFromCliName(cmd)) return runProblem(*kind, rest, out, err);
  err << "error: unknown command '" << cmd << "'\n" << usage();
  return kParse;
}

}  // namespace msmp::cli
