#ifndef PRM_SYNTAX_HPP
#define PRM_SYNTAX_HPP

#include <stdexcept>
#include <string>
#include <string_view>

#include "prm/term.hpp"

namespace prm {

// Concrete syntax:
//   term := "Z" "(" nat ")" | "S" | "P" "(" nat "," nat ")"
//         | "C" "(" term ";" term { "," term } ")" | "R" "(" term ";" term ")"
// Whitespace is insignificant; the printer emits none.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Throws ParseError on syntax errors and ValidationError on arity errors.
Term parse_term(std::string_view text);

// Parses without the final arity check (the term may be malformed).
Term parse_term_unchecked(std::string_view text);

std::string print_term(const Term& term);

}  // namespace prm

#endif  // PRM_SYNTAX_HPP
