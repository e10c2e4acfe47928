#include "qice/chc/system.hpp"

#include <set>

#include "qice/logic/errors.hpp"
#include "qice/logic/eval.hpp"
#include "qice/logic/term_io.hpp"

namespace qice {

std::vector<std::string> PredicateSig::vars() const {
  std::vector<std::string> out;
  for (const auto& [n, _] : params) out.push_back(n);
  return out;
}

std::vector<std::string> PredicateSig::arrays() const {
  std::vector<std::string> out;
  for (const auto& [n, s] : params)
    if (s.is_array()) out.push_back(n);
  return out;
}

std::vector<std::string> PredicateSig::bool_vars() const {
  std::vector<std::string> out;
  for (const auto& [n, s] : params)
    if (s.is_bool()) out.push_back(n);
  return out;
}

std::vector<std::string> PredicateSig::int_vars() const {
  std::vector<std::string> out;
  for (const auto& [n, s] : params)
    if (s.is_int()) out.push_back(n);
  return out;
}

SortEnv PredicateSig::sort_env() const {
  SortEnv env;
  for (const auto& [n, s] : params) env[n] = s;
  return env;
}

ClauseKind Clause::kind() const {
  if (!head) return ClauseKind::Query;
  return body.empty() ? ClauseKind::Fact : ClauseKind::Rule;
}

SortEnv Clause::var_env() const {
  SortEnv env;
  for (const auto& [n, s] : vars) env[n] = s;
  return env;
}

const PredicateSig* ChcSystem::find(const std::string& name) const {
  for (const auto& p : predicates)
    if (p.name == name) return &p;
  return nullptr;
}

const PredicateSig& ChcSystem::sig(const std::string& name) const {
  const PredicateSig* p = find(name);
  if (!p) throw Error("unknown predicate " + name);
  return *p;
}

void ChcSystem::validate() const {
  std::set<std::string> names;
  for (const auto& p : predicates) {
    if (!names.insert(p.name).second) throw SortError("predicate " + p.name + " declared twice");
    std::set<std::string> params;
    for (const auto& [n, _] : p.params)
      if (!params.insert(n).second) throw SortError("predicate " + p.name + " repeats parameter " + n);
  }
  for (std::size_t ci = 0; ci < clauses.size(); ++ci) {
    const Clause& c = clauses[ci];
    const std::string where = "clause " + std::to_string(ci) + ": ";
    SortEnv env = c.var_env();
    if (env.size() != c.vars.size()) throw SortError(where + "repeated clause variable");
    auto check_vars = [&](const Term& t) {
      for (const auto& [n, s] : free_vars(t)) {
        auto it = env.find(n);
        if (it == env.end()) throw SortError(where + "undeclared variable " + n);
        if (it->second != s) throw SortError(where + "variable " + n + " used with sort " + s.to_string());
      }
    };
    if (!c.constraint.sort().is_bool()) throw SortError(where + "constraint is not Bool");
    check_vars(c.constraint);
    auto check_app = [&](const Application& a) {
      const PredicateSig* p = find(a.pred);
      if (!p) throw SortError(where + "unknown predicate " + a.pred);
      if (p->arity() != a.args.size())
        throw SortError(where + a.pred + " expects " + std::to_string(p->arity()) + " arguments, got " +
                        std::to_string(a.args.size()));
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (a.args[i].sort() != p->params[i].second)
          throw SortError(where + "argument " + std::to_string(i + 1) + " of " + a.pred + " has sort " +
                          a.args[i].sort().to_string() + ", expected " + p->params[i].second.to_string());
        check_vars(a.args[i]);
      }
    };
    for (const auto& a : c.body) check_app(a);
    if (c.head) check_app(*c.head);
  }
}

Solution all_true_solution(const ChcSystem& sys) {
  Solution j;
  for (const auto& p : sys.predicates) j[p.name] = QuantifiedProperty{};
  return j;
}

Term instantiate(const ChcSystem& sys, const Solution& j, const Application& app) {
  const PredicateSig& sig = sys.sig(app.pred);
  auto it = j.find(app.pred);
  if (it == j.end()) throw Error("no interpretation for predicate " + app.pred);
  Substitution s;
  for (std::size_t i = 0; i < sig.arity(); ++i) s[sig.params[i].first] = app.args[i];
  return substitute(it->second.to_term(), s);
}

Term clause_formula(const ChcSystem& sys, const Solution& j, const Clause& c) {
  std::vector<Term> lhs;
  for (const auto& a : c.body) lhs.push_back(instantiate(sys, j, a));
  lhs.push_back(c.constraint);
  Term rhs = c.head ? instantiate(sys, j, *c.head) : mk_false();
  return mk_implies(mk_and(std::move(lhs)), rhs);
}

Valuation application_values(const ChcSystem& sys, const Application& app, const Valuation& env) {
  const PredicateSig& sig = sys.sig(app.pred);
  Valuation out;
  for (std::size_t i = 0; i < sig.arity(); ++i) out[sig.params[i].first] = eval(app.args[i], env);
  return out;
}

bool ground_check_clause(const ChcSystem& sys, const Clause& c, const Solution& j, const Valuation& env) {
  auto holds = [&](const Application& a) {
    auto it = j.find(a.pred);
    if (it == j.end()) throw Error("no interpretation for predicate " + a.pred);
    return eval_property(it->second, application_values(sys, a, env));
  };
  if (!eval_bool(c.constraint, env)) return true;
  for (const auto& a : c.body)
    if (!holds(a)) return true;
  return c.head ? holds(*c.head) : false;
}

std::string application_to_string(const Application& a) {
  std::string out = "(" + a.pred;
  for (const auto& t : a.args) out += " " + t.to_string();
  return out + ")";
}

std::string clause_to_string(const Clause& c) {
  std::string out = "(clause (forall (";
  for (std::size_t i = 0; i < c.vars.size(); ++i) {
    if (i) out += ' ';
    out += "(" + c.vars[i].first + " " + c.vars[i].second.to_string() + ")";
  }
  out += ") (=> ";
  std::vector<std::string> conj;
  for (const auto& a : c.body) conj.push_back(application_to_string(a));
  if (c.constraint.is(Op::And)) {
    for (const auto& t : c.constraint.args()) conj.push_back(t.to_string());
  } else if (!c.constraint.is_true() || conj.empty()) {
    conj.push_back(c.constraint.to_string());
  }
  if (conj.size() == 1) {
    out += conj[0];
  } else {
    out += "(and";
    for (const auto& s : conj) out += " " + s;
    out += ")";
  }
  out += " " + (c.head ? application_to_string(*c.head) : std::string("false")) + ")))";
  return out;
}

}  // namespace qice
