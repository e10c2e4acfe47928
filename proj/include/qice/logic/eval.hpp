#pragma once

#include "qice/logic/term.hpp"
#include "qice/logic/value.hpp"

namespace qice {

/// Evaluates a well-sorted term. Out-of-range reads give 0/false, out-of-range
/// writes leave the array unchanged. Throws EvalError on unbound variables.
Value eval(const Term& t, const Valuation& env);
bool eval_bool(const Term& t, const Valuation& env);
BigInt eval_int(const Term& t, const Valuation& env);

}  // namespace qice
