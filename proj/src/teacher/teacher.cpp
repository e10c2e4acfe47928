#include "qice/teacher/teacher.hpp"

#include "qice/logic/errors.hpp"
#include "qice/logic/term_io.hpp"

namespace qice {

Teacher::Teacher(const ChcSystem& sys, SolverConfig cfg)
    : sys_(sys), cfg_(std::move(cfg)), solver_(cfg_.command, cfg_.timeout) {
  if (cfg_.max_bound < 1) throw Error("array-size bound must be at least 1");
  if (cfg_.min_array_len < 0) throw Error("minimum array length must be non-negative");
}

namespace {

Term negated_clause(const ChcSystem& sys, const Clause& c, const Solution& j) {
  std::vector<Term> conj;
  for (const auto& b : c.body) conj.push_back(instantiate(sys, j, b));
  conj.push_back(c.constraint);
  if (c.head) conj.push_back(mk_not(instantiate(sys, j, *c.head)));
  return mk_and(std::move(conj));
}

std::string int_range(const std::string& t, int bound) {
  const std::string b = std::to_string(bound);
  return "(<= (- " + b + ") " + t + " " + b + ")";
}

// With `values`, a bounded query also keeps integer scalars and the cells
// of integer arrays within [-L, L], which favors small models.
std::string script(const Encoded& enc, const Clause& c, std::optional<int> bound, int min_len, bool values) {
  std::string s;
  for (const auto& d : enc.declarations) s += d + "\n";
  for (const auto& c : enc.side) s += "(assert " + c + ")\n";
  for (const auto& [_, a] : enc.arrays) {
    const std::string l = smt_symbol(a.l);
    if (min_len > 0) s += "(assert (<= " + std::to_string(min_len) + " " + l + "))\n";
    if (!bound) continue;
    s += "(assert (<= " + l + " " + std::to_string(*bound) + "))\n";
    if (values && a.sort.element().is_int())
      for (int k = 0; k < *bound; ++k)
        s += "(assert " + int_range("(select " + smt_symbol(a.u) + " " + std::to_string(k) + ")", *bound) + ")\n";
  }
  if (bound && values)
    for (const auto& [name, sort] : c.vars)
      if (sort.is_int()) s += "(assert " + int_range(smt_symbol(name), *bound) + ")\n";
  return s + "(assert " + enc.formula + ")\n";
}

Value scalar_value(const SExpr& e, Sort s) {
  if (s.is_bool()) {
    if (e.is_symbol("true")) return Value::of_bool(true);
    if (e.is_symbol("false")) return Value::of_bool(false);
  } else {
    BigInt v;
    if (e.is_atom() && parse_numeral(e.text, v)) return Value::of_int(v);
    if (e.head() == "-" && e.size() == 2 && e[1].is_atom() && parse_numeral(e[1].text, v)) return Value::of_int(-v);
  }
  throw SolverError("cannot read a " + s.to_string() + " value from " + e.to_string());
}

}  // namespace

std::string Teacher::query(std::size_t index, const Solution& j, std::optional<int> bound) const {
  const Clause& c = sys_.clauses.at(index);
  Encoded enc = encode(negated_clause(sys_, c, j), c.var_env());
  return script(enc, c, bound, cfg_.min_array_len, cfg_.bound_values);
}

CheckResult Teacher::check_clause(std::size_t index, const Solution& j, std::optional<int> bound, double timeout) {
  const Clause& c = sys_.clauses.at(index);
  Encoded enc = encode(negated_clause(sys_, c, j), c.var_env());
  std::string reason;
  const SatResult r = solver_.check(script(enc, c, bound, cfg_.min_array_len, cfg_.bound_values), &reason, timeout);
  if (r == SatResult::Unsat) {
    CheckResult out = CheckResult::valid();
    out.clause = index;
    out.bound = bound;
    return out;
  }
  if (r == SatResult::Unknown) {
    CheckResult out;
    out.kind = CheckResult::Kind::Unknown;
    out.clause = index;
    out.bound = bound;
    out.reason = reason;
    return out;
  }
  return decode(index, j, enc, bound);
}

CheckResult Teacher::decode(std::size_t index, const Solution& j, const Encoded& enc, std::optional<int> bound) {
  const Clause& c = sys_.clauses.at(index);
  auto unknown = [&](const std::string& why) {
    CheckResult out;
    out.kind = CheckResult::Kind::Unknown;
    out.clause = index;
    out.bound = bound;
    out.reason = why;
    return out;
  };
  // scalars and lengths first
  std::vector<std::string> terms;
  std::vector<Param> scalars;
  for (const auto& [name, sort] : c.vars)
    if (!sort.is_array()) {
      terms.push_back(smt_symbol(name));
      scalars.emplace_back(name, sort);
    }
  std::vector<std::string> arrays;
  for (const auto& [name, a] : enc.arrays) {
    arrays.push_back(name);
    terms.push_back(smt_symbol(a.l));
  }
  auto values = solver_.get_values(terms);
  Valuation env;
  for (std::size_t i = 0; i < scalars.size(); ++i) env[scalars[i].first] = scalar_value(values[i], scalars[i].second);
  std::vector<std::string> cells;
  std::vector<std::size_t> lengths;
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    const BigInt len = scalar_value(values[scalars.size() + i], Sort::integer()).as_int();
    if (len < 0 || len > cfg_.max_model_len)
      return unknown("model array " + arrays[i] + " has length " + len.str());
    lengths.push_back(static_cast<std::size_t>(len));
    const auto& a = enc.arrays.at(arrays[i]);
    for (std::size_t k = 0; k < lengths.back(); ++k)
      cells.push_back("(select " + smt_symbol(a.u) + " " + std::to_string(k) + ")");
  }
  auto cell_values = solver_.get_values(cells);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < arrays.size(); ++i) {
    const Sort elem = enc.arrays.at(arrays[i]).sort.element();
    std::vector<BigInt> elems;
    for (std::size_t k = 0; k < lengths[i]; ++k) {
      Value v = scalar_value(cell_values[pos++], elem);
      elems.push_back(elem.is_bool() ? BigInt(v.as_bool() ? 1 : 0) : v.as_int());
    }
    env[arrays[i]] = Value::of_array(elem, std::move(elems));
  }
  // the model must falsify the clause under our own semantics
  if (ground_check_clause(sys_, c, j, env)) return unknown("solver model does not falsify clause " + std::to_string(index));
  std::vector<DataPoint> body;
  for (const auto& b : c.body) body.push_back(DataPoint::from_valuation(sys_.sig(b.pred), application_values(sys_, b, env)));
  CheckResult out;
  out.kind = CheckResult::Kind::Counterexample;
  out.clause = index;
  out.bound = bound;
  if (!c.head) {
    out.implication = HornImplication::negative(std::move(body));
  } else {
    DataPoint head = DataPoint::from_valuation(sys_.sig(c.head->pred), application_values(sys_, *c.head, env));
    out.implication = body.empty() ? HornImplication::positive(std::move(head))
                                   : HornImplication::conditional(std::move(body), std::move(head));
  }
  return out;
}

CheckResult Teacher::find_counterexample(const Solution& j) {
  for (std::size_t i = 0; i < sys_.clauses.size(); ++i) {
    CheckResult unbounded = check_clause(i, j, std::nullopt, cfg_.probe_timeout);
    if (unbounded.is_valid()) continue;
    for (int L = std::max(1, cfg_.min_array_len); L <= cfg_.max_bound; ++L) {
      CheckResult r = check_clause(i, j, L);
      if (r.is_counterexample()) return r;
    }
    if (unbounded.is_unknown() && cfg_.probe_timeout < cfg_.timeout) {
      unbounded = check_clause(i, j, std::nullopt);
      if (unbounded.is_valid()) continue;
    }
    if (unbounded.is_counterexample()) return unbounded;
    // unknown, or a model with overly long arrays: look for a shorter one
    for (int L = 2 * cfg_.max_bound; L <= cfg_.max_model_len; L *= 2) {
      CheckResult r = check_clause(i, j, L);
      if (r.is_counterexample()) return r;
    }
    return unbounded;
  }
  return CheckResult::valid();
}

}  // namespace qice
