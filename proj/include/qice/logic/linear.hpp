#pragma once

#include <map>
#include <optional>

#include "qice/logic/term.hpp"

namespace qice {

/// sum(coeff * atom) + constant, where atoms are the non-arithmetic integer
/// subterms (variables, reads, lengths, ite terms).
struct LinearForm {
  std::map<Term, BigInt> coeffs;
  BigInt constant = 0;

  void add(const LinearForm& o, const BigInt& scale = 1);
  void add_atom(const Term& atom, const BigInt& c);
  Term to_term() const;
  bool is_constant() const { return coeffs.empty(); }
};

LinearForm linearize(const Term& int_term);

}  // namespace qice
