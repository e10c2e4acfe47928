#pragma once

#include <string>
#include <string_view>

#include "qice/logic/property.hpp"
#include "qice/logic/sexpr.hpp"
#include "qice/logic/term.hpp"

namespace qice {

// Canonical s-expression rendering:
//   5  (- 5)  true  false  x
//   (+ a b)  (* c t)  (<= a b)  (= a b)  (not t)  (and t...)  (or t...)
//   (ite c a b)  (read a i)  (write a i v)  (len a)
//   (forall-idx ((k a) ...) body)
// Properties: (qprop PSI ((a k1 k2) ...) GUARD MATRIX)
// The parser also accepts < > >= - => distinct, n-ary + and negative numerals.
std::string term_to_string(const Term& t);
std::string property_to_string(const QuantifiedProperty& p);

Sort parse_sort(const SExpr& e);
Term parse_term(const SExpr& e, const SortEnv& vars);
Term parse_term(std::string_view text, const SortEnv& vars);
QuantifiedProperty parse_property(const SExpr& e, const SortEnv& vars);
QuantifiedProperty parse_property(std::string_view text, const SortEnv& vars);

/// Parses a numeral atom (optionally with a leading '-'); false if not one.
bool parse_numeral(std::string_view s, BigInt& out);
std::string numeral_to_sexpr(const BigInt& v);

}  // namespace qice
