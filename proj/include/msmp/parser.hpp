// SPDX-License-Identifier: Apache-2.0

// Readers and writers for the on-disk formats: DIMACS CNF, a DNF variant
// ("p dnf"), group CNF, unweighted WCNF, a prefix formula syntax, and model
// files made of "v ... 0" lines.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "msmp/formula.hpp"

namespace msmp {

/// Clause groups: group[i] is the group id of clause i. Group 0 is hard.
struct ClauseGroups {
  std::uint32_t numGroups = 0;
  std::vector<std::uint32_t> groupOf;
};

struct GroupedCnf {
  CnfFormula cnf;
  ClauseGroups groups;
};

/// A formula plus the display names of bare-identifier variables
/// (names[id] is empty for x<N> variables).
struct ParsedFormula {
  Formula formula;
  std::uint32_t numVars = 0;
  std::vector<std::string> names;
};

CnfFormula parseDimacs(std::string_view text);
DnfFormula parseDnf(std::string_view text);
GroupedCnf parseGcnf(std::string_view text);
/// Hard clauses ("top" weight) go to group 0; each weight-1 soft clause gets
/// its own group. Any other weight is rejected.
GroupedCnf parseWcnf(std::string_view text);
ParsedFormula parseFormulaText(std::string_view text);

/// Literals from "v"-prefixed lines, terminated by 0.
std::vector<Lit> parseModelLines(std::string_view text);

/// Whitespace/comma separated DIMACS integers, optional trailing 0.
std::vector<Lit> parseLiteralList(std::string_view text);

std::string writeDimacs(const CnfFormula& f);
std::string writeDnf(const DnfFormula& f);
std::string writeGcnf(const GroupedCnf& f);

enum class InputFormat { Auto, Dimacs, Dnf, Gcnf, Wcnf, Formula };

using MainFormula = std::variant<CnfFormula, DnfFormula, Formula>;

struct LoadedInput {
  MainFormula formula;
  std::uint32_t numVars = 0;
  std::optional<ClauseGroups> groups;
  std::vector<std::string> names;
};

/// Auto-detects from the header line ("p cnf", "p dnf", "p gcnf",
/// "p wcnf") or a leading '(' for the formula syntax.
LoadedInput parseInput(std::string_view text, InputFormat format = InputFormat::Auto);
InputFormat parseFormatName(std::string_view name);

std::string readFile(const std::string& path);

}  // namespace msmp
