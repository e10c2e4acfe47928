#pragma once

#include <string>

#include "qice/logic/property.hpp"

namespace qice {

struct FragmentResult {
  bool ok = true;
  std::string diagnostic;  // first violation when !ok
};

/// Decides whether a property lies in the decidable parametric-size array
/// property fragment. The guard and matrix are put in clausal form; in every
/// clause, literals over quantifier variables without reads must be negations
/// of index atoms, literals reading quantified arrays must be value atoms, and
/// scalars used in index positions must not also occur as value terms.
/// Array lengths are accepted wherever a scalar variable is.
FragmentResult check_fragment(const QuantifiedProperty& p);

}  // namespace qice
