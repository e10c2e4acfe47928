#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qice/logic/pattern.hpp"
#include "qice/logic/property.hpp"
#include "qice/logic/term.hpp"
#include "qice/logic/value.hpp"

namespace qice {

using Param = std::pair<std::string, Sort>;

struct PredicateSig {
  std::string name;
  std::vector<Param> params;

  std::size_t arity() const { return params.size(); }
  std::vector<std::string> vars() const;
  std::vector<std::string> arrays() const;
  std::vector<std::string> bool_vars() const;
  std::vector<std::string> int_vars() const;
  Term param_var(std::size_t i) const { return mk_var(params[i].first, params[i].second); }
  SortEnv sort_env() const;

  friend bool operator==(const PredicateSig&, const PredicateSig&) = default;
};

struct Application {
  std::string pred;
  std::vector<Term> args;

  friend bool operator==(const Application&, const Application&) = default;
};

enum class ClauseKind { Fact, Rule, Query };

/// forall vars. body_1 /\ ... /\ body_n /\ constraint => head
/// A clause without head is a query (head false); one without body a fact.
struct Clause {
  std::vector<Param> vars;
  std::vector<Application> body;
  Term constraint = mk_true();
  std::optional<Application> head;

  ClauseKind kind() const;
  SortEnv var_env() const;

  friend bool operator==(const Clause&, const Clause&) = default;
};

struct ChcSystem {
  std::vector<PredicateSig> predicates;
  std::vector<Clause> clauses;

  const PredicateSig* find(const std::string& name) const;
  const PredicateSig& sig(const std::string& name) const;
  /// Checks arities and argument sorts, unique parameter names and that the
  /// constraint only uses declared clause variables. Throws SortError naming
  /// the clause index.
  void validate() const;

  friend bool operator==(const ChcSystem&, const ChcSystem&) = default;
};

/// Interpretation of each predicate as a property over its parameter names.
using Solution = std::map<std::string, QuantifiedProperty>;

Solution all_true_solution(const ChcSystem& sys);
/// The interpretation of `app` under `j` as a closed-over-arguments formula.
Term instantiate(const ChcSystem& sys, const Solution& j, const Application& app);
/// The clause with predicates replaced by their interpretations.
Term clause_formula(const ChcSystem& sys, const Solution& j, const Clause& c);

/// Evaluates an application's arguments to a valuation over the predicate's
/// parameters.
Valuation application_values(const ChcSystem& sys, const Application& app, const Valuation& env);

/// Truth of a clause under `j` at the concrete clause-variable assignment `env`.
bool ground_check_clause(const ChcSystem& sys, const Clause& c, const Solution& j, const Valuation& env);

std::string clause_to_string(const Clause& c);
std::string application_to_string(const Application& a);

}  // namespace qice

namespace qice {

/// Index/value classification of integer predicate parameters. Terms used
/// as array indices or lengths are Index, array cells are Value, and
/// arithmetic or comparisons propagate a class (unification over the
/// clauses). Parameters connected to neither are Any; when the two classes
/// meet every scalar is Any.
std::map<std::string, std::vector<IntClass>> infer_classes(const ChcSystem& sys);
/// The same classification for the integer variables of a set of formulas
/// sharing one namespace.
std::map<std::string, IntClass> infer_var_classes(const std::vector<Term>& terms);

}  // namespace qice
