#pragma once

#include <cctype>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mvnet/conversion.hpp"
#include "mvnet/core.hpp"
#include "mvnet/dynamics.hpp"
#include "mvnet/interaction.hpp"

namespace mvnet {

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string& message)
      : Error("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " +
              message),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Abstract syntax of an update rule. Evaluation is over plain integers;
// only the final assignment is clamped to the component range.
struct RuleExpr {
  enum class Kind { kLiteral, kVar, kNeg, kAdd, kSub, kMin, kMax, kIte };
  enum class Cmp { kEq, kLe, kGe, kLt, kGt };

  Kind kind = Kind::kLiteral;
  long long literal = 0;
  int component = 0;  // 1-based, for kVar
  Cmp cmp = Cmp::kEq;  // for kIte
  std::shared_ptr<const RuleExpr> a, b, c, d;  // ite(a cmp b, c, d); binary ops use a, b
};

using RuleExprPtr = std::shared_ptr<const RuleExpr>;

inline long long eval_rule(const RuleExpr& e, const MultiState& x) {
  switch (e.kind) {
    case RuleExpr::Kind::kLiteral:
      return e.literal;
    case RuleExpr::Kind::kVar:
      return x[e.component - 1];
    case RuleExpr::Kind::kNeg:
      return -eval_rule(*e.a, x);
    case RuleExpr::Kind::kAdd:
      return eval_rule(*e.a, x) + eval_rule(*e.b, x);
    case RuleExpr::Kind::kSub:
      return eval_rule(*e.a, x) - eval_rule(*e.b, x);
    case RuleExpr::Kind::kMin:
      return std::min(eval_rule(*e.a, x), eval_rule(*e.b, x));
    case RuleExpr::Kind::kMax:
      return std::max(eval_rule(*e.a, x), eval_rule(*e.b, x));
    case RuleExpr::Kind::kIte: {
      const long long lhs = eval_rule(*e.a, x);
      const long long rhs = eval_rule(*e.b, x);
      bool cond = false;
      switch (e.cmp) {
        case RuleExpr::Cmp::kEq: cond = lhs == rhs; break;
        case RuleExpr::Cmp::kLe: cond = lhs <= rhs; break;
        case RuleExpr::Cmp::kGe: cond = lhs >= rhs; break;
        case RuleExpr::Cmp::kLt: cond = lhs < rhs; break;
        case RuleExpr::Cmp::kGt: cond = lhs > rhs; break;
      }
      return cond ? eval_rule(*e.c, x) : eval_rule(*e.d, x);
    }
  }
  return 0;
}

struct SourceLocation {
  int line = 0;
  int column = 0;
};

struct TableRow {
  MultiState from;
  MultiState to;
  SourceLocation loc;
};

// Parsed network definition: component declarations plus either a full
// transition table or one update rule per component.
struct NetworkDocument {
  enum class Mode { kTable, kRules };

  MultiSpace space;
  Mode mode = Mode::kTable;
  std::vector<TableRow> rows;
  std::vector<RuleExprPtr> rules;  // one per component, in order

  MultivaluedMap to_map() const {
    if (mode == Mode::kTable) {
      std::vector<StateRank> table(space.state_count(), BooleanConversion::kUndefined);
      for (const TableRow& row : rows) table[rank(space, row.from)] = rank(space, row.to);
      return MultivaluedMap(space, std::move(table));
    }
    return MultivaluedMap::from_function(space, [this](const MultiState& x) {
      MultiState img(space.component_count());
      for (int i = 1; i <= space.component_count(); ++i) {
        long long value = eval_rule(*rules[i - 1], x);
        value = std::max<long long>(0, std::min<long long>(space.level(i), value));
        img[i - 1] = static_cast<int>(value);
      }
      return img;
    });
  }
};

namespace detail {

struct Token {
  enum class Kind { kName, kInt, kSymbol, kEnd };
  Kind kind = Kind::kEnd;
  std::string text;
  long long value = 0;
  int line = 0;
  int column = 0;
};

// Tokenizes one line; symbols are longest-match so "->", "==", "<=", ">="
// survive next to "-", "=", "<", ">".
inline std::vector<Token> tokenize_line(const std::string& line, int line_number) {
  std::vector<Token> out;
  std::size_t pos = 0;
  while (pos < line.size()) {
    const char c = line[pos];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
      continue;
    }
    Token tok;
    tok.line = line_number;
    tok.column = static_cast<int>(pos) + 1;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos;
      while (end < line.size() && std::isdigit(static_cast<unsigned char>(line[end]))) ++end;
      tok.kind = Token::Kind::kInt;
      tok.text = line.substr(pos, end - pos);
      tok.value = std::stoll(tok.text);
      pos = end;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos;
      while (end < line.size() && (std::isalnum(static_cast<unsigned char>(line[end])) ||
                                   line[end] == '_'))
        ++end;
      tok.kind = Token::Kind::kName;
      tok.text = line.substr(pos, end - pos);
      pos = end;
    } else {
      tok.kind = Token::Kind::kSymbol;
      static const char* kTwoCharSymbols[] = {"->", "==", "<=", ">="};
      bool matched = false;
      for (const char* sym : kTwoCharSymbols) {
        if (line.compare(pos, 2, sym) == 0) {
          tok.text = sym;
          pos += 2;
          matched = true;
          break;
        }
      }
      if (!matched) {
        static const std::string kOneCharSymbols = ":=+-(),<>";
        if (kOneCharSymbols.find(c) == std::string::npos)
          throw ParseError(line_number, tok.column, std::string("unexpected character '") + c + "'");
        tok.text = std::string(1, c);
        ++pos;
      }
    }
    out.push_back(std::move(tok));
  }
  Token end;
  end.kind = Token::Kind::kEnd;
  end.line = line_number;
  end.column = static_cast<int>(line.size()) + 1;
  out.push_back(end);
  return out;
}

// Recursive-descent parser for rule expressions over one token stream.
class ExprParser {
 public:
  ExprParser(const std::vector<Token>& tokens, std::size_t start,
             const std::vector<std::string>& component_names)
      : tokens_(tokens), pos_(start), names_(component_names) {}

  RuleExprPtr parse_full() {
    RuleExprPtr e = parse_sum();
    expect_end();
    return e;
  }

  std::size_t position() const { return pos_; }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  Token take() { return tokens_[pos_++]; }

  bool at_symbol(const std::string& s) const {
    return peek().kind == Token::Kind::kSymbol && peek().text == s;
  }

  void expect_symbol(const std::string& s) {
    if (!at_symbol(s))
      throw ParseError(peek().line, peek().column, "expected '" + s + "'");
    ++pos_;
  }

  void expect_end() {
    if (peek().kind != Token::Kind::kEnd)
      throw ParseError(peek().line, peek().column, "trailing input after expression");
  }

  RuleExprPtr parse_sum() {
    RuleExprPtr left = parse_unary();
    while (at_symbol("+") || at_symbol("-")) {
      const bool add = peek().text == "+";
      ++pos_;
      auto node = std::make_shared<RuleExpr>();
      node->kind = add ? RuleExpr::Kind::kAdd : RuleExpr::Kind::kSub;
      node->a = left;
      node->b = parse_unary();
      left = node;
    }
    return left;
  }

  RuleExprPtr parse_unary() {
    if (at_symbol("-")) {
      ++pos_;
      auto node = std::make_shared<RuleExpr>();
      node->kind = RuleExpr::Kind::kNeg;
      node->a = parse_unary();
      return node;
    }
    return parse_atom();
  }

  RuleExprPtr parse_atom() {
    const Token tok = take();
    if (tok.kind == Token::Kind::kInt) {
      auto node = std::make_shared<RuleExpr>();
      node->kind = RuleExpr::Kind::kLiteral;
      node->literal = tok.value;
      return node;
    }
    if (tok.kind == Token::Kind::kSymbol && tok.text == "(") {
      RuleExprPtr inner = parse_sum();
      expect_symbol(")");
      return inner;
    }
    if (tok.kind == Token::Kind::kName) {
      if (tok.text == "min" || tok.text == "max") {
        expect_symbol("(");
        auto node = std::make_shared<RuleExpr>();
        node->kind = tok.text == "min" ? RuleExpr::Kind::kMin : RuleExpr::Kind::kMax;
        node->a = parse_sum();
        expect_symbol(",");
        node->b = parse_sum();
        expect_symbol(")");
        return node;
      }
      if (tok.text == "ite") {
        expect_symbol("(");
        auto node = std::make_shared<RuleExpr>();
        node->kind = RuleExpr::Kind::kIte;
        node->a = parse_sum();
        node->cmp = parse_comparison();
        node->b = parse_sum();
        expect_symbol(",");
        node->c = parse_sum();
        expect_symbol(",");
        node->d = parse_sum();
        expect_symbol(")");
        return node;
      }
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == tok.text) {
          auto node = std::make_shared<RuleExpr>();
          node->kind = RuleExpr::Kind::kVar;
          node->component = static_cast<int>(i) + 1;
          return node;
        }
      }
      throw ParseError(tok.line, tok.column, "unknown component '" + tok.text + "'");
    }
    throw ParseError(tok.line, tok.column, "expected an expression");
  }

  RuleExpr::Cmp parse_comparison() {
    const Token tok = take();
    if (tok.kind == Token::Kind::kSymbol) {
      if (tok.text == "==") return RuleExpr::Cmp::kEq;
      if (tok.text == "<=") return RuleExpr::Cmp::kLe;
      if (tok.text == ">=") return RuleExpr::Cmp::kGe;
      if (tok.text == "<") return RuleExpr::Cmp::kLt;
      if (tok.text == ">") return RuleExpr::Cmp::kGt;
    }
    throw ParseError(tok.line, tok.column, "expected a comparison operator");
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_;
  const std::vector<std::string>& names_;
};

inline std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::string current;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current += c;
    }
  }
  // A trailing newline does not open a new line; keep one line for the
  // empty document so errors still have a position.
  if (!current.empty() || lines.empty()) lines.push_back(current);
  return lines;
}

}  // namespace detail

// Parses a network definition. Grammar, one section per document:
//
//   components: a:3 b:2      # name:level pairs, levels >= 1
//   map:                     # then one row per state
//   0 0 -> 1 0
//   ...
//
// or, instead of map:,
//
//   rules:
//   a = min(b + 1, 2)
//   b = ite(a >= 1, 2, 0)
//
// '#' starts a comment; blank lines are ignored; table mode must cover
// every state exactly once.
inline NetworkDocument parse(const std::string& text,
                             std::uint64_t state_budget = kDefaultStateBudget) {
  const std::vector<std::string> lines = detail::split_lines(text);

  std::vector<std::string> names;
  std::vector<int> levels;
  std::optional<NetworkDocument::Mode> mode;
  std::vector<TableRow> raw_rows;
  std::vector<std::pair<std::string, detail::Token>> pending_rules;  // name token kept for errors
  std::vector<RuleExprPtr> parsed_rules;
  std::vector<int> rule_owner;  // component index per parsed rule

  bool seen_components = false;
  for (int ln = 0; ln < static_cast<int>(lines.size()); ++ln) {
    const std::vector<detail::Token> tokens = detail::tokenize_line(lines[ln], ln + 1);
    if (tokens.front().kind == detail::Token::Kind::kEnd) continue;
    const detail::Token& head = tokens.front();

    if (!seen_components) {
      if (head.kind != detail::Token::Kind::kName || head.text != "components")
        throw ParseError(head.line, head.column, "expected 'components:'");
      std::size_t pos = 1;
      if (tokens[pos].kind != detail::Token::Kind::kSymbol || tokens[pos].text != ":")
        throw ParseError(tokens[pos].line, tokens[pos].column, "expected ':' after components");
      ++pos;
      while (tokens[pos].kind != detail::Token::Kind::kEnd) {
        if (tokens[pos].kind != detail::Token::Kind::kName)
          throw ParseError(tokens[pos].line, tokens[pos].column, "expected a component name");
        const std::string name = tokens[pos].text;
        for (const std::string& existing : names)
          if (existing == name)
            throw ParseError(tokens[pos].line, tokens[pos].column,
                             "duplicate component '" + name + "'");
        ++pos;
        if (tokens[pos].kind != detail::Token::Kind::kSymbol || tokens[pos].text != ":")
          throw ParseError(tokens[pos].line, tokens[pos].column, "expected ':' after name");
        ++pos;
        if (tokens[pos].kind != detail::Token::Kind::kInt || tokens[pos].value < 1)
          throw ParseError(tokens[pos].line, tokens[pos].column, "expected a level bound >= 1");
        names.push_back(name);
        levels.push_back(static_cast<int>(tokens[pos].value));
        ++pos;
      }
      if (names.empty()) throw ParseError(head.line, head.column, "no components declared");
      seen_components = true;
      continue;
    }

    if (!mode) {
      if (head.kind == detail::Token::Kind::kName && (head.text == "map" || head.text == "rules")) {
        if (tokens.size() < 2 || tokens[1].kind != detail::Token::Kind::kSymbol ||
            tokens[1].text != ":" || tokens[2].kind != detail::Token::Kind::kEnd)
          throw ParseError(head.line, head.column, "expected bare 'map:' or 'rules:' line");
        mode = head.text == "map" ? NetworkDocument::Mode::kTable : NetworkDocument::Mode::kRules;
        continue;
      }
      throw ParseError(head.line, head.column, "expected 'map:' or 'rules:'");
    }

    const int n = static_cast<int>(levels.size());
    if (*mode == NetworkDocument::Mode::kTable) {
      TableRow row;
      row.loc = SourceLocation{head.line, head.column};
      std::size_t pos = 0;
      for (int i = 0; i < n; ++i, ++pos) {
        if (tokens[pos].kind != detail::Token::Kind::kInt)
          throw ParseError(tokens[pos].line, tokens[pos].column, "expected a state coordinate");
        if (tokens[pos].value < 0 || tokens[pos].value > levels[i])
          throw ParseError(tokens[pos].line, tokens[pos].column, "coordinate out of range");
        row.from.push_back(static_cast<int>(tokens[pos].value));
      }
      if (tokens[pos].kind != detail::Token::Kind::kSymbol || tokens[pos].text != "->")
        throw ParseError(tokens[pos].line, tokens[pos].column, "expected '->'");
      ++pos;
      for (int i = 0; i < n; ++i, ++pos) {
        if (tokens[pos].kind != detail::Token::Kind::kInt)
          throw ParseError(tokens[pos].line, tokens[pos].column, "expected an image coordinate");
        if (tokens[pos].value < 0 || tokens[pos].value > levels[i])
          throw ParseError(tokens[pos].line, tokens[pos].column, "image coordinate out of range");
        row.to.push_back(static_cast<int>(tokens[pos].value));
      }
      if (tokens[pos].kind != detail::Token::Kind::kEnd)
        throw ParseError(tokens[pos].line, tokens[pos].column, "trailing input after table row");
      raw_rows.push_back(std::move(row));
    } else {
      if (head.kind != detail::Token::Kind::kName)
        throw ParseError(head.line, head.column, "expected a component name");
      int component = 0;
      for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == head.text) component = static_cast<int>(i) + 1;
      if (component == 0)
        throw ParseError(head.line, head.column, "unknown component '" + head.text + "'");
      if (tokens[1].kind != detail::Token::Kind::kSymbol || tokens[1].text != "=")
        throw ParseError(tokens[1].line, tokens[1].column, "expected '='");
      detail::ExprParser parser(tokens, 2, names);
      parsed_rules.push_back(parser.parse_full());
      rule_owner.push_back(component);
      pending_rules.emplace_back(head.text, head);
    }
  }

  if (!seen_components) throw ParseError(1, 1, "empty document");
  if (!mode) throw ParseError(static_cast<int>(lines.size()), 1, "missing 'map:' or 'rules:' section");

  NetworkDocument doc{MultiSpace(levels, names, state_budget), *mode, {}, {}};

  if (*mode == NetworkDocument::Mode::kTable) {
    std::vector<char> seen(doc.space.state_count(), 0);
    for (TableRow& row : raw_rows) {
      const StateRank r = rank(doc.space, row.from);
      if (seen[r])
        throw ParseError(row.loc.line, row.loc.column, "duplicate row for state");
      seen[r] = 1;
      doc.rows.push_back(std::move(row));
    }
    for (StateRank s = 0; s < doc.space.state_count(); ++s)
      if (!seen[s])
        throw ParseError(static_cast<int>(lines.size()), 1,
                         "missing row for state " + state_label(doc.space, s));
  } else {
    doc.rules.resize(levels.size());
    for (std::size_t k = 0; k < parsed_rules.size(); ++k) {
      const int component = rule_owner[k];
      if (doc.rules[component - 1])
        throw ParseError(pending_rules[k].second.line, pending_rules[k].second.column,
                         "duplicate rule for component '" + pending_rules[k].first + "'");
      doc.rules[component - 1] = parsed_rules[k];
    }
    for (std::size_t i = 0; i < doc.rules.size(); ++i)
      if (!doc.rules[i])
        throw ParseError(static_cast<int>(lines.size()), 1,
                         "missing rule for component '" + names[i] + "'");
  }
  return doc;
}

// Canonical table document: declarations on one line, rows in rank order.
// Parsing the result reproduces the map byte for byte.
inline std::string render_table(const MultivaluedMap& f) {
  const MultiSpace& sp = f.space();
  std::string out = "components:";
  for (int i = 1; i <= sp.component_count(); ++i)
    out += " " + sp.component_name(i) + ":" + std::to_string(sp.level(i));
  out += "\nmap:\n";
  for (StateRank s = 0; s < sp.state_count(); ++s) {
    const MultiState x = sp.coordinates(s);
    const MultiState y = sp.coordinates(f.image(s));
    for (int i = 0; i < sp.component_count(); ++i) {
      if (i) out += " ";
      out += std::to_string(x[i]);
    }
    out += " ->";
    for (int i = 0; i < sp.component_count(); ++i) out += " " + std::to_string(y[i]);
    out += "\n";
  }
  return out;
}

// Table listing of a conversion over its domain; admissible-only tables
// print only their defined rows, which is not a parseable map: document.
inline std::string render_table(const BooleanConversion& F) {
  const MultiSpace& bsp = F.bit_space();
  std::string out = "components:";
  for (int i = 1; i <= bsp.component_count(); ++i)
    out += " " + bsp.component_name(i) + ":1";
  out += "\nmap:\n";
  const StateRank size = static_cast<StateRank>(bsp.state_count());
  for (StateRank y = 0; y < size; ++y) {
    if (!F.defined(y)) continue;
    const MultiState x = bsp.coordinates(y);
    const MultiState img = bsp.coordinates(F.image(y));
    for (int i = 0; i < bsp.component_count(); ++i) {
      if (i) out += " ";
      out += std::to_string(x[i]);
    }
    out += " ->";
    for (int i = 0; i < bsp.component_count(); ++i) out += " " + std::to_string(img[i]);
    out += "\n";
  }
  return out;
}

// DOT export. States are labelled with their coordinate tuples (bit strings
// for Boolean universes); signed edges carry "+"/"-" labels and negative
// edges are dashed. Output is deterministic for a given input.
inline std::string export_dot(const AsyncDynamics& ad) {
  std::string out = "digraph async {\n";
  for (int v = 0; v < ad.size(); ++v)
    out += "  \"" + state_label(ad.space(), ad.state_at(v)) + "\";\n";
  for (int v = 0; v < ad.size(); ++v) {
    const std::string from = state_label(ad.space(), ad.state_at(v));
    for (int w : ad.successors(v))
      out += "  \"" + from + "\" -> \"" + state_label(ad.space(), ad.state_at(w)) + "\";\n";
  }
  out += "}\n";
  return out;
}

inline std::string export_dot(const SignedDigraph& g) {
  std::string out = "digraph interaction {\n";
  for (int v = 1; v <= g.vertex_count(); ++v) out += "  \"" + g.vertex_name(v) + "\";\n";
  for (const SignedEdge& e : g.edges()) {
    out += "  \"" + g.vertex_name(e.from) + "\" -> \"" + g.vertex_name(e.to) + "\"";
    out += e.sign > 0 ? " [label=\"+\"]" : " [label=\"-\", style=dashed]";
    out += ";\n";
  }
  out += "}\n";
  return out;
}

}  // namespace mvnet
