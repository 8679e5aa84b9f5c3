// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace msmp::cli {

enum ExitCode { kOk = 0, kIllPosed = 1, kParse = 2, kInternal = 3 };

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `bench` subcommand; `args` excludes "bench".
int runBench(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Call-count bound for an algorithm on |R| = r, |M| = m. Returns false when
/// the algorithm has no asserted bound.
bool callBound(const std::string& alg, std::size_t r, std::size_t m, std::uint64_t& bound);

}  // namespace msmp::cli
