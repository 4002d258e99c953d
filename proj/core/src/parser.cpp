#include "cforge/parser.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>
#include <system_error>

namespace cforge {
namespace {

std::string describe(std::string_view detail, std::size_t line, std::size_t column,
                     const std::vector<std::string>& expected) {
  std::string msg = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": ";
  msg += detail;
  if (!expected.empty()) {
    msg += " (expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i > 0) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    msg += ")";
  }
  return msg;
}

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, LParen, RParen, Bar, Leq, Geq, Eq, End };

struct Token {
  Tok kind;
  std::size_t column;  // 1-based
  double number = 0.0;
  std::string text;
};

std::string token_name(const Token& t) {
  switch (t.kind) {
    case Tok::Number:
    case Tok::Ident:
      return "'" + t.text + "'";
    case Tok::End:
      return "end of input";
    default:
      return "'" + t.text + "'";
  }
}

const std::vector<std::string> kOperandStart = {"number", "variable", "'('", "'-'"};
const std::vector<std::string> kRelations = {"'<='", "'>='", "'='"};

class Lexer {
 public:
  Lexer(std::string_view text, std::size_t line) : text_(text), line_(line) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text_.size()) {
      const char ch = text_[i];
      const std::size_t col = i + 1;
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++i;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
        out.push_back(lex_number(i));
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        out.push_back({Tok::Ident, col, 0.0, std::string(text_.substr(i, j - i))});
        i = j;
        continue;
      }
      auto two = text_.substr(i, 2);
      if (two == "<=") {
        out.push_back({Tok::Leq, col, 0.0, "<="});
        i += 2;
        continue;
      }
      if (two == ">=") {
        out.push_back({Tok::Geq, col, 0.0, ">="});
        i += 2;
        continue;
      }
      if (two == "==") {
        out.push_back({Tok::Eq, col, 0.0, "=="});
        i += 2;
        continue;
      }
      Tok kind;
      switch (ch) {
        case '+': kind = Tok::Plus; break;
        case '-': kind = Tok::Minus; break;
        case '*': kind = Tok::Star; break;
        case '/': kind = Tok::Slash; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '|': kind = Tok::Bar; break;
        case '=': kind = Tok::Eq; break;
        default:
          throw ParseError(std::string("unexpected character '") + ch + "'", line_, col,
                           {"number", "variable", "operator", "relation"});
      }
      out.push_back({kind, col, 0.0, std::string(1, ch)});
      ++i;
    }
    out.push_back({Tok::End, text_.size() + 1, 0.0, ""});
    return out;
  }

 private:
  Token lex_number(std::size_t& i) {
    const std::size_t start = i;
    bool digits = false;
    while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) {
      ++i;
      digits = true;
    }
    if (i < text_.size() && text_[i] == '.') {
      ++i;
      while (i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]))) {
        ++i;
        digits = true;
      }
    }
    if (!digits) throw ParseError("malformed number", line_, start + 1, {"digit"});
    // An exponent is taken only when digits follow; "2e" is 2 times the variable e.
    if (i < text_.size() && (text_[i] == 'e' || text_[i] == 'E')) {
      std::size_t j = i + 1;
      if (j < text_.size() && (text_[j] == '+' || text_[j] == '-')) ++j;
      if (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) {
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        i = j;
      }
    }
    const std::string literal(text_.substr(start, i - start));
    double value = 0.0;
    const auto res = std::from_chars(literal.data(), literal.data() + literal.size(), value);
    if (res.ec != std::errc() || res.ptr != literal.data() + literal.size() || !std::isfinite(value)) {
      throw ParseError("malformed number '" + literal + "'", line_, start + 1, {"number"});
    }
    return {Tok::Number, start + 1, value, literal};
  }

  std::string_view text_;
  std::size_t line_;
};

class Parser {
 public:
  Parser(std::string_view text, std::size_t line) : tokens_(Lexer(text, line).run()), line_(line) {}

  TermList constraint() {
    TermList out;
    if (peek().kind == Tok::Bar) {
      advance();
      LinearExpr inner = expression();
      expect(Tok::Bar, {"'|'"});
      const Token& rel = peek();
      if (rel.kind != Tok::Leq) fail("absolute value must be bounded with '<='", rel, {"'<='"});
      advance();
      const Token& bound_tok = peek();
      LinearExpr bound = expression();
      if (!bound.is_constant()) fail("bound of an absolute value must be a constant", bound_tok, {"number"});
      finish();
      const double k = bound.constant;
      out.push_back(LinearTerm::leq(inner, k));
      out.push_back(LinearTerm::leq((-1.0) * inner, k));
      return out;
    }
    LinearExpr lhs = expression();
    const Token rel = peek();
    if (rel.kind != Tok::Leq && rel.kind != Tok::Geq && rel.kind != Tok::Eq) {
      fail("expected a relation, found " + token_name(rel), rel, expected_after_operand());
    }
    advance();
    LinearExpr rhs = expression();
    finish();
    switch (rel.kind) {
      case Tok::Leq: out.push_back(LinearTerm::leq(lhs - rhs)); break;
      case Tok::Geq: out.push_back(LinearTerm::leq(rhs - lhs)); break;
      default: out.push_back(LinearTerm::eq(lhs - rhs)); break;
    }
    return out;
  }

  LinearExpr standalone_expression() {
    LinearExpr e = expression();
    if (peek().kind != Tok::End) fail("unexpected " + token_name(peek()), peek(), {"'+'", "'-'", "end of input"});
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  void advance() {
    if (pos_ + 1 < tokens_.size()) ++pos_;
  }

  [[noreturn]] void fail(const std::string& detail, const Token& at, std::vector<std::string> expected) const {
    throw ParseError(detail, line_, at.column, std::move(expected));
  }

  void expect(Tok kind, std::vector<std::string> expected) {
    if (peek().kind != kind) fail("unexpected " + token_name(peek()), peek(), std::move(expected));
    advance();
  }

  void finish() {
    if (peek().kind != Tok::End) fail("unexpected " + token_name(peek()), peek(), {"end of input"});
  }

  static std::vector<std::string> expected_after_operand() {
    std::vector<std::string> out = {"'+'", "'-'", "'*'", "'/'"};
    out.insert(out.end(), kRelations.begin(), kRelations.end());
    return out;
  }

  LinearExpr expression() {
    LinearExpr acc;
    bool negate = false;
    if (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      negate = peek().kind == Tok::Minus;
      advance();
    }
    acc = product();
    if (negate) acc *= -1.0;
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const bool minus = peek().kind == Tok::Minus;
      advance();
      LinearExpr rhs = product();
      if (minus) {
        acc -= rhs;
      } else {
        acc += rhs;
      }
    }
    return acc;
  }

  static bool starts_operand(Tok kind) { return kind == Tok::Number || kind == Tok::Ident || kind == Tok::LParen; }

  LinearExpr product() {
    LinearExpr acc = factor();
    while (true) {
      const Token op = peek();
      if (op.kind == Tok::Star || op.kind == Tok::Slash) {
        advance();
        const Token at = peek();
        LinearExpr rhs = factor();
        if (op.kind == Tok::Slash) {
          if (!rhs.is_constant()) fail("division by a variable is not linear", at, {"number"});
          if (rhs.constant == 0.0) fail("division by zero", at, {"nonzero number"});
          acc *= 1.0 / rhs.constant;
        } else {
          acc = multiply(acc, rhs, at);
        }
      } else if (starts_operand(op.kind)) {
        LinearExpr rhs = factor();
        acc = multiply(acc, rhs, op);
      } else {
        return acc;
      }
    }
  }

  LinearExpr multiply(const LinearExpr& a, const LinearExpr& b, const Token& at) const {
    if (!a.is_constant() && !b.is_constant()) fail("product of two variables is not linear", at, {"number"});
    if (a.is_constant()) return a.constant * b;
    return b.constant * a;
  }

  LinearExpr factor() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::Number:
        advance();
        return LinearExpr::number(t.number);
      case Tok::Ident:
        advance();
        return LinearExpr::variable(t.text);
      case Tok::LParen: {
        advance();
        LinearExpr inner = expression();
        expect(Tok::RParen, {"')'"});
        return inner;
      }
      case Tok::Minus: {
        advance();
        return (-1.0) * factor();
      }
      default:
        fail(t.kind == Tok::End ? "unexpected end of input" : "unexpected " + token_name(t), t, kOperandStart);
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_;
};

std::string shortest(double value) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

void append_coefficient(std::string& out, double coeff, const std::string& name, bool first, NumberStyle style) {
  const double magnitude = std::abs(coeff);
  if (first) {
    if (coeff < 0.0) out += "-";
  } else {
    out += coeff < 0.0 ? " - " : " + ";
  }
  const std::string digits = format_number(magnitude, style);
  if (digits != "1") {
    out += digits;
    out += ' ';
  }
  out += name;
}

bool opposite_pair(const LinearTerm& a, const LinearTerm& b) {
  if (a.is_equality() || b.is_equality() || a.is_constant()) return false;
  const auto& ca = a.coefficients();
  const auto& cb = b.coefficients();
  if (ca.size() != cb.size()) return false;
  for (auto ia = ca.begin(), ib = cb.begin(); ia != ca.end(); ++ia, ++ib) {
    if (ia->first != ib->first || ia->second != -ib->second) return false;
  }
  return a.bound() == b.bound();
}

}  // namespace

ParseError::ParseError(std::string message, std::size_t line, std::size_t column, std::vector<std::string> expected)
    : Error(describe(message, line, column, expected)),
      detail_(std::move(message)),
      line_(line),
      column_(column),
      expected_(std::move(expected)) {}

TermList parse_constraint(std::string_view text, std::size_t line) { return Parser(text, line).constraint(); }

TermList parse_constraints(const std::vector<std::string>& lines) {
  TermList out;
  for (std::size_t i = 0; i < lines.size(); ++i) out.append(parse_constraint(lines[i], i + 1));
  return out;
}

LinearExpr parse_expression(std::string_view text) { return Parser(text, 1).standalone_expression(); }

std::string format_number(double value, NumberStyle style) {
  if (value == 0.0) return "0";
  if (style == NumberStyle::Exact) return shortest(value);
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6g", value);
  std::string out(buf.data());
  if (out == "-0") return "0";
  return out;
}

std::string render_expression(const LinearExpr& expr, NumberStyle style) {
  std::string out;
  bool first = true;
  for (const auto& [name, coeff] : expr.coefficients) {
    append_coefficient(out, coeff, name, first, style);
    first = false;
  }
  if (expr.constant != 0.0 || first) {
    if (first) {
      out += format_number(expr.constant, style);
    } else {
      out += expr.constant < 0.0 ? " - " : " + ";
      out += format_number(std::abs(expr.constant), style);
    }
  }
  return out;
}

std::string render_term(const LinearTerm& term, NumberStyle style) {
  std::string out = term.is_constant() ? "0" : render_expression(term.lhs(), style);
  out += term.is_equality() ? " = " : " <= ";
  out += format_number(term.bound(), style);
  return out;
}

std::vector<std::string> render(const TermList& terms, NumberStyle style) {
  std::vector<std::string> out;
  std::vector<bool> used(terms.size(), false);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (used[i]) continue;
    used[i] = true;
    const LinearTerm& t = terms[i];
    std::optional<std::size_t> partner;
    for (std::size_t j = i + 1; j < terms.size() && !partner; ++j) {
      if (!used[j] && opposite_pair(t, terms[j])) partner = j;
    }
    if (!partner) {
      out.push_back(render_term(t, style));
      continue;
    }
    used[*partner] = true;
    const LinearTerm& positive = t.coefficients().begin()->second > 0.0 ? t : terms[*partner];
    out.push_back("|" + render_expression(positive.lhs(), style) + "| <= " + format_number(t.bound(), style));
  }
  return out;
}

}  // namespace cforge
