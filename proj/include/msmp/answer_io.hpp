// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "msmp/reductions.hpp"

namespace msmp {

enum class AnswerFormat { Plain, Json };

/// Run metadata printed next to the answer.
struct AnswerContext {
  double timeMs = 0.0;
};

/// Plain: "v <values> 0" (plus "o <optimum>" for optimization kinds).
/// Json: {problem, answer, oracle_calls, algorithm, time_ms[, optimum]}.
std::string writeAnswer(const ProblemAnswer& answer, AnswerFormat format,
                        const AnswerContext& ctx = {});

AnswerFormat parseAnswerFormat(const std::string& name);

}  // namespace msmp
