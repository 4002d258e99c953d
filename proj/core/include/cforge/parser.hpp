#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "cforge/errors.hpp"
#include "cforge/linear_term.hpp"

namespace cforge {

class ParseError : public Error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column, std::vector<std::string> expected);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

/// Parses one constraint per line. "|e| <= k" yields two terms; ">=" is negated to "<=".
TermList parse_constraints(const std::vector<std::string>& lines);
TermList parse_constraint(std::string_view text, std::size_t line = 1);

/// Parses an affine expression such as "soc_1 + 0.5 soc_2 - 3".
LinearExpr parse_expression(std::string_view text);

enum class NumberStyle {
  Display,  // 6 significant digits
  Exact,    // shortest round-trip representation
};

std::string format_number(double value, NumberStyle style = NumberStyle::Display);
std::string render_expression(const LinearExpr& expr, NumberStyle style = NumberStyle::Display);
std::string render_term(const LinearTerm& term, NumberStyle style = NumberStyle::Display);

/// One string per constraint, variables in alphabetical order. Opposite pairs
/// (e <= k, -e <= k) are folded into "|e| <= k".
std::vector<std::string> render(const TermList& terms, NumberStyle style = NumberStyle::Display);

}  // namespace cforge
