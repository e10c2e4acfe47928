#include "qice/logic/property.hpp"

#include "qice/logic/errors.hpp"
#include "qice/logic/eval.hpp"
#include "qice/logic/term_io.hpp"

namespace qice {

QuantifiedProperty QuantifiedProperty::quantifier_free(const Term& f) {
  QuantifiedProperty p;
  p.psi = f;
  return p;
}

std::vector<std::string> QuantifiedProperty::quantifier_vars() const {
  std::vector<std::string> out;
  for (const auto& b : blocks) out.insert(out.end(), b.vars.begin(), b.vars.end());
  return out;
}

Term QuantifiedProperty::to_term() const {
  if (blocks.empty()) return psi;
  std::vector<std::string> names;
  std::vector<Term> arrays;
  for (const auto& b : blocks)
    for (const auto& k : b.vars) {
      names.push_back(k);
      arrays.push_back(b.array);
    }
  Term body = guard.is_true() ? matrix : mk_or(mk_not(guard), matrix);
  Term q = mk_forall(std::move(names), std::move(arrays), body);
  return psi.is_true() ? q : mk_and(psi, q);
}

SortEnv QuantifiedProperty::free_vars() const { return qice::free_vars(to_term()); }

std::string QuantifiedProperty::to_string() const { return property_to_string(*this); }

bool eval_property(const QuantifiedProperty& p, const Valuation& env) {
  if (!eval_bool(p.psi, env)) return false;
  if (p.blocks.empty()) return true;
  std::vector<std::string> names;
  std::vector<std::size_t> sizes;
  for (const auto& b : p.blocks) {
    const std::size_t len = eval(b.array, env).size();
    for (const auto& k : b.vars) {
      names.push_back(k);
      sizes.push_back(len);
    }
  }
  for (auto s : sizes)
    if (s == 0) return true;
  Valuation ext = env;
  std::vector<std::size_t> idx(names.size(), 0);
  while (true) {
    for (std::size_t i = 0; i < names.size(); ++i) ext[names[i]] = Value::of_int(static_cast<long long>(idx[i]));
    if (eval_bool(p.guard, ext) && !eval_bool(p.matrix, ext)) return false;
    std::size_t i = 0;
    for (; i < idx.size(); ++i) {
      if (++idx[i] < sizes[i]) break;
      idx[i] = 0;
    }
    if (i == idx.size()) return true;
  }
}

}  // namespace qice
