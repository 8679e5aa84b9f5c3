// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "cli.hpp"
#include "msmp/error.hpp"
#include "msmp/generator.hpp"
#include "msmp/parser.hpp"
#include "msmp/reductions.hpp"

namespace msmp::cli {

namespace {

struct Row {
  std::string alg;
  std::size_t r = 0;
  std::size_t m = 0;
  std::uint64_t calls = 0;
  double ms = 0.0;
};

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int runBench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Oracle-call benchmark; prints problem,alg,r,m,calls,ms", "msmp bench"};
  std::string problem = "mus";
  std::string algs = "deletion,insertion,dichotomic,quickxplain,progression";
  std::string dir;
  std::string solver;
  std::size_t count = 50;
  std::size_t planted = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool noTime = false;
  app.add_option("--problem", problem, "Problem name")->capture_default_str();
  app.add_option("--alg", algs, "Comma separated algorithms, or all")->capture_default_str();
  app.add_option("--dir", dir, "Benchmark every file of this directory instead of generating");
  app.add_option("--count", count, "Number of generated instances")->capture_default_str();
  app.add_option("--seed", seed, "First generator seed")->capture_default_str();
  app.add_option("--planted", planted, "Generate FMUS instances of this size with a 2-clause MUS");
  app.add_option("--threads", threads, "Worker threads")->capture_default_str();
  app.add_option("--solver", solver, "internal | exec:PATH");
  app.add_flag("--no-time", noTime, "Report time as 0");
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kParse;
  }

  try {
    auto kind = kindFromCliName(problem);
    if (!kind) throw UsageError("unknown problem '" + problem + "'");
    std::vector<std::string> algNames =
        algs == "all" ? std::vector<std::string>{"deletion", "insertion", "dichotomic", "quickxplain",
                                                 "progression"}
                      : splitList(algs);
    std::vector<Algorithm> algList;
    for (const auto& a : algNames) algList.push_back(parseAlgorithm(a));
    OracleFactory factory = makeOracleFactory(resolveOracleSpec(solver));

    std::vector<std::filesystem::path> files;
    if (!dir.empty()) {
      for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.is_regular_file()) files.push_back(e.path());
      std::sort(files.begin(), files.end());
    }
    const std::size_t total = dir.empty() ? count : files.size();

    auto runOne = [&](std::size_t idx) {
      std::vector<Row> rows;
      auto attempt = [&](const ProblemInstance& inst) {
        rows.clear();
        for (std::size_t a = 0; a < algList.size(); ++a) {
          auto t0 = std::chrono::steady_clock::now();
          ProblemAnswer ans = solve(*kind, inst, factory, {algList[a], false});
          double ms =
              std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
          rows.push_back({std::string(algorithmName(algList[a])), ans.engine.referenceSize,
                          ans.engine.minimal.size(), ans.engine.predicateTests(),
                          noTime ? 0.0 : ms});
        }
      };
      if (!dir.empty()) {
        LoadedInput in = parseInput(readFile(files[idx].string()));
        ProblemInstance inst;
        inst.formula = in.formula;
        inst.numVars = in.numVars;
        inst.groups = in.groups;
        attempt(inst);
        return rows;
      }
      if (planted > 0) {
        CnfFormula f = plantedMus(planted, seed + idx);
        ProblemInstance inst;
        inst.numVars = f.numVars;
        inst.formula = std::move(f);
        attempt(inst);
        return rows;
      }
      InstanceGenerator gen(seed + idx);
      for (int tries = 0; tries < 200; ++tries) {
        try {
          attempt(gen.instanceFor(*kind));
          return rows;
        } catch (const IllPosedError&) {
          // Draw again from the same stream.
        }
      }
      throw Error("no well-posed " + problem + " instance found for seed " +
                  std::to_string(seed + idx));
    };

    std::vector<std::vector<Row>> results(total);
    std::vector<std::string> failures(total);
    unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(total, 1))));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < total; i += workers) {
          try {
            results[i] = runOne(i);
          } catch (const std::exception& e) {
            failures[i] = e.what();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < total; ++i)
      if (!failures[i].empty()) throw Error("instance " + std::to_string(i) + ": " + failures[i]);

    out << "problem,alg,r,m,calls,ms\n";
    int code = kOk;
    for (std::size_t i = 0; i < total; ++i) {
      for (const Row& row : results[i]) {
        out << problem << ',' << row.alg << ',' << row.r << ',' << row.m << ',' << row.calls << ','
            << row.ms << '\n';
        std::uint64_t bound = 0;
        if (callBound(row.alg, row.r, row.m, bound)) {
          bool ok = row.alg == "deletion" ? row.calls == bound : row.calls <= bound;
          if (!ok) {
            err << "error: instance " << i << ": " << row.alg << " used " << row.calls
                << " tests, bound " << bound << '\n';
            code = kInternal;
          }
        }
      }
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kParse;
  } catch (const ParseError& e) {
    err << "error: parse error: " << e.what() << '\n';
    return kParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace msmp::cli
