#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qice {

/// Generic s-expression with source position (1-based).
struct SExpr {
  bool atom = false;
  std::string text;  // atom spelling
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_atom() const { return atom; }
  bool is_list() const { return !atom; }
  bool is_symbol(std::string_view s) const { return atom && text == s; }
  std::size_t size() const { return items.size(); }
  const SExpr& operator[](std::size_t i) const { return items[i]; }
  /// Head symbol of a non-empty list whose first item is an atom, else "".
  std::string head() const;
  std::string to_string() const;
};

/// Parses a sequence of s-expressions. `;` starts a comment to end of line,
/// `|...|` is a quoted symbol. Throws ParseError.
std::vector<SExpr> parse_sexprs(std::string_view text);
SExpr parse_sexpr(std::string_view text);

[[noreturn]] void parse_fail(const SExpr& at, const std::string& msg);

}  // namespace qice
