#include "qice/logic/pattern.hpp"

#include "qice/logic/errors.hpp"

namespace qice {

Term Pattern::instantiate(const std::vector<Term>& vars) const {
  if (vars.size() != arity) throw Error("pattern " + to_string() + " expects " + std::to_string(arity) + " variables");
  Substitution sub;
  for (std::size_t i = 0; i < arity; ++i) sub[hole(i)] = vars[i];
  return substitute(atom, sub);
}

}  // namespace qice
