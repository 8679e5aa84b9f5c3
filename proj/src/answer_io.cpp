// SPDX-License-Identifier: Apache-2.0

#include "msmp/answer_io.hpp"

#include <sstream>

#include "json.hpp"
#include "msmp/error.hpp"

namespace msmp {

std::string writeAnswer(const ProblemAnswer& answer, AnswerFormat format,
                        const AnswerContext& ctx) {
  if (format == AnswerFormat::Json) {
    nlohmann::ordered_json j;
    j["problem"] = std::string(kindName(answer.kind));
    j["answer"] = answer.values;
    j["oracle_calls"] = answer.oracleCalls();
    j["algorithm"] = std::string(algorithmName(answer.engine.algorithm));
    j["time_ms"] = ctx.timeMs;
    if (answer.optimum) j["optimum"] = *answer.optimum;
    if (answer.degenerate) j["degenerate"] = true;
    return j.dump() + "\n";
  }
  std::ostringstream out;
  if (answer.optimum) out << "o " << *answer.optimum << '\n';
  out << 'v';
  for (int v : answer.values) out << ' ' << v;
  out << " 0\n";
  return out.str();
}

AnswerFormat parseAnswerFormat(const std::string& name) {
  if (name == "plain") return AnswerFormat::Plain;
  if (name == "json") return AnswerFormat::Json;
  throw UsageError("unknown output format '" + name + "' (expected plain or json)");
}

}  // namespace msmp
