// SPDX-License-Identifier: Apache-2.0

#include "msmp/parser.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "msmp/error.hpp"

namespace msmp {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(line == 0 ? message
                      : (column == 0 ? "line " + std::to_string(line) + ": " + message
                                     : "line " + std::to_string(line) + ", column " +
                                           std::to_string(column) + ": " + message)),
      line_(line),
      column_(column) {}

namespace {

struct Token {
  std::string_view text;
  std::size_t line;
};

bool isBlank(std::string_view s) {
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

std::vector<std::string_view> splitWords(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<long long> toInteger(std::string_view s) {
  long long v = 0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || first == last) return std::nullopt;
  return v;
}

std::vector<std::pair<std::string_view, std::size_t>> lines(std::string_view text) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t lineNo = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.emplace_back(line, lineNo);
    ++lineNo;
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

bool isComment(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  return i < line.size() && line[i] == 'c';
}

struct Header {
  std::string kind;
  std::vector<long long> numbers;
  std::size_t line = 0;
  std::optional<std::string_view> topWord;
};

/// Parses "p <kind> n m [...]" and returns the body tokens that follow.
struct Body {
  Header header;
  std::vector<Token> tokens;
};

Body splitHeaderAndBody(std::string_view text, std::string_view expectedKind,
                        std::size_t minNumbers, std::size_t maxNumbers) {
  Body body;
  bool seenHeader = false;
  for (auto [line, lineNo] : lines(text)) {
    if (isBlank(line) || isComment(line)) continue;
    auto words = splitWords(line);
    if (words.front() == "p") {
      if (seenHeader) throw ParseError("duplicate problem header", lineNo);
      seenHeader = true;
      if (words.size() < 2 || words[1] != expectedKind)
        throw ParseError("expected header 'p " + std::string(expectedKind) + "'", lineNo);
      if (words.size() < 2 + minNumbers || words.size() > 2 + maxNumbers)
        throw ParseError("malformed problem header", lineNo);
      body.header.kind = std::string(words[1]);
      body.header.line = lineNo;
      for (std::size_t i = 2; i < words.size(); ++i) {
        auto v = toInteger(words[i]);
        if (!v || *v < 0) throw ParseError("malformed number in header", lineNo);
        body.header.numbers.push_back(*v);
      }
      continue;
    }
    if (!seenHeader) throw ParseError("data before problem header", lineNo);
    for (auto w : words) body.tokens.push_back({w, lineNo});
  }
  if (!seenHeader) throw ParseError("missing problem header 'p " + std::string(expectedKind) + "'", 0);
  return body;
}

/// Reads 0-terminated literal lists. `prefix` (if set) parses a leading
/// token per unit, e.g. a group marker or a weight.
template <class UnitT, class PrefixFn>
std::vector<UnitT> readUnits(const std::vector<Token>& tokens, std::uint32_t numVars,
                             std::size_t expected, PrefixFn&& prefix,
                             std::vector<std::size_t>* startLines = nullptr) {
  std::vector<UnitT> units;
  std::size_t i = 0;
  while (i < tokens.size()) {
    if (units.size() == expected)
      throw ParseError("trailing data after " + std::to_string(expected) + " declared units",
                       tokens[i].line);
    std::size_t startLine = tokens[i].line;
    i = prefix(tokens, i);
    std::vector<Lit> lits;
    bool terminated = false;
    while (i < tokens.size()) {
      const Token& tok = tokens[i++];
      auto v = toInteger(tok.text);
      if (!v) throw ParseError("unexpected token '" + std::string(tok.text) + "'", tok.line);
      if (*v == 0) {
        terminated = true;
        break;
      }
      long long a = *v < 0 ? -*v : *v;
      if (a > static_cast<long long>(numVars))
        throw ParseError("variable " + std::to_string(a) + " exceeds declared count " +
                             std::to_string(numVars),
                         tok.line);
      lits.push_back(Lit::fromDimacs(static_cast<int>(*v)));
    }
    if (!terminated) throw ParseError("last unit is not terminated by 0", startLine);
    auto unit = UnitT::tryMake(lits);
    if (!unit) {
      throw ParseError(std::is_same_v<UnitT, Clause> ? "tautologous clause" : "contradictory term",
                       startLine);
    }
    units.push_back(*std::move(unit));
    if (startLines) startLines->push_back(startLine);
  }
  if (units.size() != expected)
    throw ParseError("declared " + std::to_string(expected) + " units but found " +
                         std::to_string(units.size()),
                     0);
  return units;
}

std::size_t noPrefix(const std::vector<Token>&, std::size_t i) { return i; }

std::uint32_t checkedVarCount(long long n, std::size_t line) {
  if (n > (1LL << 28)) throw ParseError("variable count too large", line);
  return static_cast<std::uint32_t>(n);
}

}  // namespace

CnfFormula parseDimacs(std::string_view text) {
  Body body = splitHeaderAndBody(text, "cnf", 2, 2);
  CnfFormula out;
  out.numVars = checkedVarCount(body.header.numbers[0], body.header.line);
  out.clauses = readUnits<Clause>(body.tokens, out.numVars,
                                  static_cast<std::size_t>(body.header.numbers[1]), noPrefix);
  return out;
}

DnfFormula parseDnf(std::string_view text) {
  Body body = splitHeaderAndBody(text, "dnf", 2, 2);
  DnfFormula out;
  out.numVars = checkedVarCount(body.header.numbers[0], body.header.line);
  out.terms = readUnits<Term>(body.tokens, out.numVars,
                              static_cast<std::size_t>(body.header.numbers[1]), noPrefix);
  return out;
}

GroupedCnf parseGcnf(std::string_view text) {
  Body body = splitHeaderAndBody(text, "gcnf", 3, 3);
  GroupedCnf out;
  out.cnf.numVars = checkedVarCount(body.header.numbers[0], body.header.line);
  out.groups.numGroups = static_cast<std::uint32_t>(body.header.numbers[2]);
  auto prefix = [&](const std::vector<Token>& toks, std::size_t i) {
    std::string_view w = toks[i].text;
    if (w.size() < 3 || w.front() != '{' || w.back() != '}')
      throw ParseError("expected group marker '{g}'", toks[i].line);
    auto g = toInteger(w.substr(1, w.size() - 2));
    if (!g || *g < 0) throw ParseError("malformed group id", toks[i].line);
    if (*g > static_cast<long long>(out.groups.numGroups))
      throw ParseError("group id " + std::to_string(*g) + " exceeds declared count " +
                           std::to_string(out.groups.numGroups),
                       toks[i].line);
    out.groups.groupOf.push_back(static_cast<std::uint32_t>(*g));
    return i + 1;
  };
  out.cnf.clauses = readUnits<Clause>(body.tokens, out.cnf.numVars,
                                      static_cast<std::size_t>(body.header.numbers[1]), prefix);
  return out;
}

GroupedCnf parseWcnf(std::string_view text) {
  // Old format with a "p wcnf" header, or the header-less format with "h"
  // marking hard clauses.
  bool hasHeader = false;
  for (auto [line, lineNo] : lines(text)) {
    if (isBlank(line) || isComment(line)) continue;
    hasHeader = splitWords(line).front() == "p";
    break;
  }

  GroupedCnf out;
  std::optional<long long> top;
  std::vector<Token> tokens;
  std::size_t expected = 0;
  bool countKnown = false;
  if (hasHeader) {
    Body body = splitHeaderAndBody(text, "wcnf", 2, 3);
    out.cnf.numVars = checkedVarCount(body.header.numbers[0], body.header.line);
    expected = static_cast<std::size_t>(body.header.numbers[1]);
    countKnown = true;
    if (body.header.numbers.size() == 3) top = body.header.numbers[2];
    tokens = std::move(body.tokens);
  } else {
    for (auto [line, lineNo] : lines(text)) {
      if (isBlank(line) || isComment(line)) continue;
      for (auto w : splitWords(line)) tokens.push_back({w, lineNo});
    }
    // Real universe is fixed after reading.
    out.cnf.numVars = 1u << 28;
  }

  std::uint32_t nextGroup = 1;
  auto prefix = [&](const std::vector<Token>& toks, std::size_t i) {
    const Token& tok = toks[i];
    if (tok.text == "h") {
      out.groups.groupOf.push_back(0);
      return i + 1;
    }
    auto w = toInteger(tok.text);
    if (!w || *w <= 0) throw ParseError("malformed clause weight", tok.line);
    if (top && *w >= *top) {
      out.groups.groupOf.push_back(0);
    } else if (*w == 1) {
      out.groups.groupOf.push_back(nextGroup++);
    } else {
      throw ParseError("soft clause weight " + std::to_string(*w) +
                           " unsupported: only unweighted (weight 1) soft clauses are accepted",
                       tok.line);
    }
    return i + 1;
  };

  if (!countKnown) {
    // Count units by terminators so readUnits can check the total.
    std::size_t zeros = 0;
    bool expectPrefix = true;
    for (const Token& t : tokens) {
      if (expectPrefix) {
        expectPrefix = false;
        continue;
      }
      if (t.text == "0") {
        ++zeros;
        expectPrefix = true;
      }
    }
    expected = zeros;
  }
  out.cnf.clauses = readUnits<Clause>(tokens, out.cnf.numVars, expected, prefix);
  if (!hasHeader) {
    std::uint32_t maxVar = 0;
    for (const Clause& c : out.cnf.clauses)
      for (Lit l : c) maxVar = std::max(maxVar, l.var().id);
    out.cnf.numVars = maxVar;
  }
  out.groups.numGroups = nextGroup - 1;
  return out;
}

//===----------------------------------------------------------------------===//
// Prefix formula syntax
//===----------------------------------------------------------------------===//

namespace {

struct FmlToken {
  enum Kind { LParen, RParen, Word } kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

std::vector<FmlToken> tokenizeFormula(std::string_view text) {
  std::vector<FmlToken> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](char c) {
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(c);
      ++i;
      continue;
    }
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') {
        advance(text[i]);
        ++i;
      }
      continue;
    }
    if (c == '(' || c == ')') {
      out.push_back({c == '(' ? FmlToken::LParen : FmlToken::RParen, text.substr(i, 1), line, col});
      advance(c);
      ++i;
      continue;
    }
    std::size_t j = i;
    std::size_t startCol = col;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) &&
           text[j] != '(' && text[j] != ')' && text[j] != ';') {
      advance(text[j]);
      ++j;
    }
    out.push_back({FmlToken::Word, text.substr(i, j - i), line, startCol});
    i = j;
  }
  return out;
}

bool isNumberedVar(std::string_view w) {
  if (w.size() < 2 || w[0] != 'x') return false;
  for (std::size_t i = 1; i < w.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(w[i]))) return false;
  return true;
}

bool isIdentifier(std::string_view w) {
  if (w.empty() || !(std::isalpha(static_cast<unsigned char>(w[0])) || w[0] == '_')) return false;
  for (char c : w)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

bool isHead(std::string_view w) {
  return w == "not" || w == "and" || w == "or" || w == "imp" || w == "iff";
}

class FormulaParser {
 public:
  FormulaParser(std::vector<FmlToken> tokens, std::map<std::string, std::uint32_t> ids)
      : tokens_(std::move(tokens)), ids_(std::move(ids)) {}

  Formula parseTop() {
    if (tokens_.empty()) throw ParseError("empty formula", 1, 1);
    Formula f = parse();
    if (pos_ != tokens_.size()) fail("trailing input after formula", tokens_[pos_]);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& msg, const FmlToken& at) {
    throw ParseError(msg, at.line, at.column);
  }

  const FmlToken& next() {
    if (pos_ >= tokens_.size()) {
      const FmlToken& last = tokens_.back();
      throw ParseError("unexpected end of input (unbalanced parentheses)", last.line,
                       last.column + last.text.size());
    }
    return tokens_[pos_++];
  }

  Formula parse() {
    const FmlToken& tok = next();
    if (tok.kind == FmlToken::RParen) fail("unexpected ')'", tok);
    if (tok.kind == FmlToken::Word) {
      if (isHead(tok.text)) fail("operator '" + std::string(tok.text) + "' outside parentheses", tok);
      return Formula::atom(Var{ids_.at(std::string(tok.text))});
    }
    const FmlToken& head = next();
    if (head.kind != FmlToken::Word || !isHead(head.text))
      fail("unknown head; expected one of not/and/or/imp/iff", head);
    std::vector<Formula> args;
    while (pos_ < tokens_.size() && tokens_[pos_].kind != FmlToken::RParen) args.push_back(parse());
    const FmlToken& close = next();
    (void)close;
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) {
        std::string need = lo == hi ? std::to_string(lo) : "at least " + std::to_string(lo);
        fail("'" + std::string(head.text) + "' needs " + need + " operands, got " +
                 std::to_string(args.size()),
             head);
      }
    };
    if (head.text == "not") {
      arity(1, 1);
      return Formula::makeNot(args[0]);
    }
    if (head.text == "and" || head.text == "or") {
      arity(2, SIZE_MAX);
      return head.text == "and" ? Formula::makeAnd(std::move(args)) : Formula::makeOr(std::move(args));
    }
    arity(2, 2);
    if (head.text == "imp") return Formula::makeImplies(args[0], args[1]);
    return Formula::makeIff(args[0], args[1]);
  }

  std::vector<FmlToken> tokens_;
  std::map<std::string, std::uint32_t> ids_;
  std::size_t pos_ = 0;
};

}  // namespace

ParsedFormula parseFormulaText(std::string_view text) {
  auto tokens = tokenizeFormula(text);
  // Numbered variables keep their index; bare identifiers are numbered after
  // the largest x<N>, in order of first appearance.
  std::uint32_t maxNumbered = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const FmlToken& t = tokens[i];
    if (t.kind != FmlToken::Word) continue;
    bool isHeadPosition = i > 0 && tokens[i - 1].kind == FmlToken::LParen;
    if (isHeadPosition) continue;
    if (isNumberedVar(t.text)) {
      auto v = toInteger(t.text.substr(1));
      if (!v || *v <= 0 || *v > (1LL << 28))
        throw ParseError("invalid variable '" + std::string(t.text) + "'", t.line, t.column);
      maxNumbered = std::max(maxNumbered, static_cast<std::uint32_t>(*v));
    } else if (!isIdentifier(t.text) || isHead(t.text)) {
      throw ParseError("invalid variable name '" + std::string(t.text) + "'", t.line, t.column);
    }
  }
  std::map<std::string, std::uint32_t> ids;
  ParsedFormula out;
  std::uint32_t next = maxNumbered;
  out.names.assign(maxNumbered + 1, "");
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const FmlToken& t = tokens[i];
    if (t.kind != FmlToken::Word) continue;
    if (i > 0 && tokens[i - 1].kind == FmlToken::LParen) continue;
    std::string w(t.text);
    if (ids.count(w)) continue;
    if (isNumberedVar(t.text)) {
      ids[w] = static_cast<std::uint32_t>(*toInteger(t.text.substr(1)));
    } else {
      ids[w] = ++next;
      out.names.push_back(w);
    }
  }
  FormulaParser parser(std::move(tokens), std::move(ids));
  out.formula = parser.parseTop();
  out.numVars = next;
  return out;
}

std::vector<Lit> parseModelLines(std::string_view text) {
  std::vector<Lit> out;
  for (auto [line, lineNo] : lines(text)) {
    auto words = splitWords(line);
    if (words.empty() || words.front() != "v") continue;
    for (std::size_t i = 1; i < words.size(); ++i) {
      auto v = toInteger(words[i]);
      if (!v) throw ParseError("unexpected token '" + std::string(words[i]) + "' in model", lineNo);
      if (*v == 0) return out;
      out.push_back(Lit::fromDimacs(static_cast<int>(*v)));
    }
  }
  return out;
}

std::vector<Lit> parseLiteralList(std::string_view text) {
  std::string cleaned(text);
  for (char& c : cleaned)
    if (c == ',') c = ' ';
  std::vector<Lit> out;
  auto words = splitWords(cleaned);
  for (std::size_t i = 0; i < words.size(); ++i) {
    auto v = toInteger(words[i]);
    if (!v) throw ParseError("unexpected token '" + std::string(words[i]) + "' in literal list", 0);
    if (*v == 0) {
      if (i + 1 != words.size()) throw ParseError("data after terminating 0 in literal list", 0);
      break;
    }
    out.push_back(Lit::fromDimacs(static_cast<int>(*v)));
  }
  return out;
}

//===----------------------------------------------------------------------===//
// Writers
//===----------------------------------------------------------------------===//

namespace {

template <class Units>
void writeUnits(std::ostringstream& os, const Units& units) {
  for (const auto& u : units) {
    for (Lit l : u) os << l.toDimacs() << ' ';
    os << "0\n";
  }
}

}  // namespace

std::string writeDimacs(const CnfFormula& f) {
  std::ostringstream os;
  os << "p cnf " << f.numVars << ' ' << f.clauses.size() << '\n';
  writeUnits(os, f.clauses);
  return os.str();
}

std::string writeDnf(const DnfFormula& f) {
  std::ostringstream os;
  os << "p dnf " << f.numVars << ' ' << f.terms.size() << '\n';
  writeUnits(os, f.terms);
  return os.str();
}

std::string writeGcnf(const GroupedCnf& f) {
  std::ostringstream os;
  os << "p gcnf " << f.cnf.numVars << ' ' << f.cnf.clauses.size() << ' ' << f.groups.numGroups
     << '\n';
  for (std::size_t i = 0; i < f.cnf.clauses.size(); ++i) {
    os << '{' << f.groups.groupOf[i] << "} ";
    for (Lit l : f.cnf.clauses[i]) os << l.toDimacs() << ' ';
    os << "0\n";
  }
  return os.str();
}

//===----------------------------------------------------------------------===//
// Dispatch
//===----------------------------------------------------------------------===//

InputFormat parseFormatName(std::string_view name) {
  if (name == "auto") return InputFormat::Auto;
  if (name == "dimacs" || name == "cnf") return InputFormat::Dimacs;
  if (name == "dnf") return InputFormat::Dnf;
  if (name == "gcnf") return InputFormat::Gcnf;
  if (name == "wcnf") return InputFormat::Wcnf;
  if (name == "fml") return InputFormat::Formula;
  throw UsageError("unknown input format '" + std::string(name) + "'");
}

LoadedInput parseInput(std::string_view text, InputFormat format) {
  if (format == InputFormat::Auto) {
    for (auto [line, lineNo] : lines(text)) {
      if (isBlank(line) || isComment(line) || line.front() == ';') continue;
      auto words = splitWords(line);
      if (words.front().front() == '(') {
        format = InputFormat::Formula;
      } else if (words.front() == "p" && words.size() >= 2) {
        if (words[1] == "cnf") format = InputFormat::Dimacs;
        else if (words[1] == "dnf") format = InputFormat::Dnf;
        else if (words[1] == "gcnf") format = InputFormat::Gcnf;
        else if (words[1] == "wcnf") format = InputFormat::Wcnf;
      } else if (words.front() == "h") {
        format = InputFormat::Wcnf;
      }
      if (format == InputFormat::Auto)
        throw ParseError("cannot detect input format", lineNo);
      break;
    }
    if (format == InputFormat::Auto) throw ParseError("empty input", 0);
  }

  LoadedInput out;
  switch (format) {
    case InputFormat::Dimacs: {
      CnfFormula f = parseDimacs(text);
      out.numVars = f.numVars;
      out.formula = std::move(f);
      break;
    }
    case InputFormat::Dnf: {
      DnfFormula f = parseDnf(text);
      out.numVars = f.numVars;
      out.formula = std::move(f);
      break;
    }
    case InputFormat::Gcnf:
    case InputFormat::Wcnf: {
      GroupedCnf g = format == InputFormat::Gcnf ? parseGcnf(text) : parseWcnf(text);
      out.numVars = g.cnf.numVars;
      out.groups = std::move(g.groups);
      out.formula = std::move(g.cnf);
      break;
    }
    case InputFormat::Formula: {
      ParsedFormula p = parseFormulaText(text);
      out.numVars = p.numVars;
      out.names = std::move(p.names);
      out.formula = std::move(p.formula);
      break;
    }
    case InputFormat::Auto:
      break;
  }
  return out;
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace msmp
