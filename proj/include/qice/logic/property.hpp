#pragma once

#include <string>
#include <vector>

#include "qice/logic/term.hpp"
#include "qice/logic/value.hpp"

namespace qice {

/// Quantifier variables reading one array.
struct QuantBlock {
  Term array;  // an array-sorted Var
  std::vector<std::string> vars;

  friend bool operator==(const QuantBlock&, const QuantBlock&) = default;
};

/// psi /\ forall blocks. (/\ 0 <= k < |a|) /\ guard => matrix
///
/// `guard` holds any index guard beyond the implicit range constraints (for
/// example k1 <= k2 in ordered mode). A property with no blocks is just psi.
struct QuantifiedProperty {
  Term psi = mk_true();
  std::vector<QuantBlock> blocks;
  Term guard = mk_true();
  Term matrix = mk_true();

  static QuantifiedProperty quantifier_free(const Term& f);

  bool has_quantifiers() const { return !blocks.empty(); }
  std::vector<std::string> quantifier_vars() const;
  /// Encodes the property with a bounded Forall term.
  Term to_term() const;
  /// Free (non-quantified) variables.
  SortEnv free_vars() const;
  std::string to_string() const;

  friend bool operator==(const QuantifiedProperty&, const QuantifiedProperty&) = default;
};

/// Evaluates by enumerating every in-range assignment of the quantifier blocks.
bool eval_property(const QuantifiedProperty& p, const Valuation& env);

}  // namespace qice
