#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qice/logic/sort.hpp"

namespace qice {

enum class Op : std::uint8_t {
  IntConst,
  BoolConst,
  Var,
  Add,
  Mul,  // constant coefficient times a term
  Leq,
  Eq,
  Not,
  And,
  Or,
  Ite,
  Read,
  Write,
  Len,
  // Bounded universal quantifier: each bound variable ranges over the valid
  // indices [0, |array|) of its bounding array term.
  Forall,
};

/// Immutable, structurally compared term. Copies share the underlying node.
class Term {
 public:
  Term() = default;

  bool is_null() const { return node_ == nullptr; }
  explicit operator bool() const { return node_ != nullptr; }

  Op op() const;
  Sort sort() const;
  /// Value of an IntConst, coefficient of a Mul.
  const BigInt& int_value() const;
  bool bool_value() const;
  /// Name of a Var.
  const std::string& name() const;
  /// Operands. For Forall: the bounding array terms followed by the body.
  const std::vector<Term>& args() const;
  const Term& arg(std::size_t i) const { return args()[i]; }
  /// Bound variable names of a Forall, aligned with the array operands.
  const std::vector<std::string>& bound() const;
  const Term& body() const { return args().back(); }

  std::size_t hash() const;
  bool is(Op o) const { return node_ && op() == o; }
  bool is_true() const { return is(Op::BoolConst) && bool_value(); }
  bool is_false() const { return is(Op::BoolConst) && !bool_value(); }

  std::string to_string() const;

  friend bool operator==(const Term& a, const Term& b);
  friend std::strong_ordering operator<=>(const Term& a, const Term& b);

  struct Node;

 private:
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  friend Term make_node(Node&&);

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

std::ostream& operator<<(std::ostream& os, const Term& t);

// Core constructors. All of them check sorts and throw SortError.
Term mk_int(const BigInt& v);
Term mk_int(long long v);
Term mk_bool(bool v);
inline Term mk_true() { return mk_bool(true); }
inline Term mk_false() { return mk_bool(false); }
Term mk_var(const std::string& name, Sort sort);
Term mk_add(const Term& a, const Term& b);
Term mk_mul(const BigInt& c, const Term& t);
Term mk_leq(const Term& a, const Term& b);
Term mk_eq(const Term& a, const Term& b);
Term mk_not(const Term& t);
/// Flattens nested conjunctions; empty yields true, singleton yields its element.
Term mk_and(std::vector<Term> ts);
Term mk_and(const Term& a, const Term& b);
Term mk_or(std::vector<Term> ts);
Term mk_or(const Term& a, const Term& b);
Term mk_ite(const Term& c, const Term& a, const Term& b);
Term mk_read(const Term& arr, const Term& idx);
Term mk_write(const Term& arr, const Term& idx, const Term& val);
Term mk_len(const Term& arr);
Term mk_forall(std::vector<std::string> names, std::vector<Term> arrays, const Term& body);

// Derived forms, expressed with the core constructors.
Term mk_sub(const Term& a, const Term& b);
Term mk_neg(const Term& a);
Term mk_sum(const std::vector<Term>& ts);
Term mk_lt(const Term& a, const Term& b);
Term mk_geq(const Term& a, const Term& b);
Term mk_gt(const Term& a, const Term& b);
Term mk_neq(const Term& a, const Term& b);
Term mk_implies(const Term& a, const Term& b);

using SortEnv = std::map<std::string, Sort>;

/// Free variables with their sorts (Forall-bound names excluded).
SortEnv free_vars(const Term& t);
void collect_free_vars(const Term& t, SortEnv& out);
bool contains_op(const Term& t, Op op);

using Substitution = std::map<std::string, Term>;

/// Simultaneous, capture-avoiding substitution. Replacements must keep sorts.
Term substitute(const Term& t, const Substitution& s);

/// Constant folding and trivial boolean simplification (x+0, true/false
/// absorption, comparisons of constants). Preserves semantics.
Term simplify(const Term& t);

/// Fresh name not in `used`, built from `base`. Adds it to `used`.
std::string fresh_name(const std::string& base, std::set<std::string>& used);

}  // namespace qice
