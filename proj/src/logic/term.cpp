#include "qice/logic/term.hpp"

#include <boost/functional/hash.hpp>
#include <sstream>

#include "qice/logic/errors.hpp"
#include "qice/logic/term_io.hpp"

namespace qice {

struct Term::Node {
  Op op;
  Sort sort;
  BigInt ival;
  bool bval = false;
  std::string name;
  std::vector<Term> args;
  std::vector<std::string> bound;
  std::size_t hash = 0;
};

Term make_node(Term::Node&& n) {
  std::size_t h = static_cast<std::size_t>(n.op) * 0x9e3779b97f4a7c15ULL;
  boost::hash_combine(h, static_cast<int>(n.sort.kind()));
  if (n.sort.is_array()) boost::hash_combine(h, static_cast<int>(n.sort.element().kind()));
  if (n.op == Op::IntConst || n.op == Op::Mul) boost::hash_combine(h, boost::multiprecision::hash_value(n.ival));
  boost::hash_combine(h, n.bval);
  boost::hash_combine(h, n.name);
  for (const auto& b : n.bound) boost::hash_combine(h, b);
  for (const auto& a : n.args) boost::hash_combine(h, a.hash());
  n.hash = h;
  return Term(std::make_shared<const Term::Node>(std::move(n)));
}

Op Term::op() const { return node_->op; }
Sort Term::sort() const { return node_->sort; }
const BigInt& Term::int_value() const { return node_->ival; }
bool Term::bool_value() const { return node_->bval; }
const std::string& Term::name() const { return node_->name; }
const std::vector<Term>& Term::args() const { return node_->args; }
const std::vector<std::string>& Term::bound() const { return node_->bound; }
std::size_t Term::hash() const { return node_ ? node_->hash : 0; }

std::string Term::to_string() const { return term_to_string(*this); }

std::ostream& operator<<(std::ostream& os, const Term& t) { return os << t.to_string(); }

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op || x.sort != y.sort) return false;
  return x.ival == y.ival && x.bval == y.bval && x.name == y.name && x.bound == y.bound &&
         x.args == y.args;
}

std::strong_ordering operator<=>(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (!a.node_) return std::strong_ordering::less;
  if (!b.node_) return std::strong_ordering::greater;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (auto c = x.op <=> y.op; c != 0) return c;
  if (auto c = x.sort <=> y.sort; c != 0) return c;
  if (x.ival != y.ival) return x.ival < y.ival ? std::strong_ordering::less : std::strong_ordering::greater;
  if (auto c = x.bval <=> y.bval; c != 0) return c;
  if (auto c = x.name <=> y.name; c != 0) return c;
  if (auto c = x.bound <=> y.bound; c != 0) return c;
  return std::lexicographical_compare_three_way(x.args.begin(), x.args.end(), y.args.begin(),
                                                y.args.end());
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw SortError(msg);
}

Term node(Op op, Sort sort, std::vector<Term> args) {
  for (const auto& a : args) require(!a.is_null(), "null operand");
  Term::Node n{op, sort, {}, false, {}, std::move(args), {}, 0};
  return make_node(std::move(n));
}

}  // namespace

Term mk_int(const BigInt& v) {
  Term::Node n{Op::IntConst, Sort::integer(), v, false, {}, {}, {}, 0};
  return make_node(std::move(n));
}

Term mk_int(long long v) { return mk_int(BigInt(v)); }

Term mk_bool(bool v) {
  Term::Node n{Op::BoolConst, Sort::boolean(), 0, v, {}, {}, {}, 0};
  return make_node(std::move(n));
}

Term mk_var(const std::string& name, Sort sort) {
  require(!name.empty(), "empty variable name");
  Term::Node n{Op::Var, sort, 0, false, name, {}, {}, 0};
  return make_node(std::move(n));
}

Term mk_add(const Term& a, const Term& b) {
  require(a.sort().is_int() && b.sort().is_int(), "+ expects Int operands: " + a.to_string() + ", " + b.to_string());
  return node(Op::Add, Sort::integer(), {a, b});
}

Term mk_mul(const BigInt& c, const Term& t) {
  require(t.sort().is_int(), "* expects an Int operand: " + t.to_string());
  Term::Node n{Op::Mul, Sort::integer(), c, false, {}, {t}, {}, 0};
  return make_node(std::move(n));
}

Term mk_leq(const Term& a, const Term& b) {
  require(a.sort().is_int() && b.sort().is_int(), "<= expects Int operands: " + a.to_string() + ", " + b.to_string());
  return node(Op::Leq, Sort::boolean(), {a, b});
}

Term mk_eq(const Term& a, const Term& b) {
  require(a.sort() == b.sort(), "= expects operands of one sort: " + a.to_string() + " : " +
                                    a.sort().to_string() + ", " + b.to_string() + " : " + b.sort().to_string());
  return node(Op::Eq, Sort::boolean(), {a, b});
}

Term mk_not(const Term& t) {
  require(t.sort().is_bool(), "not expects a Bool operand: " + t.to_string());
  return node(Op::Not, Sort::boolean(), {t});
}

namespace {

Term mk_junction(Op op, std::vector<Term> ts) {
  std::vector<Term> flat;
  flat.reserve(ts.size());
  for (auto& t : ts) {
    require(!t.is_null() && t.sort().is_bool(), "and/or expects Bool operands");
    if (t.op() == op) {
      flat.insert(flat.end(), t.args().begin(), t.args().end());
    } else {
      flat.push_back(std::move(t));
    }
  }
  if (flat.empty()) return mk_bool(op == Op::And);
  if (flat.size() == 1) return flat.front();
  return node(op, Sort::boolean(), std::move(flat));
}

}  // namespace

Term mk_and(std::vector<Term> ts) { return mk_junction(Op::And, std::move(ts)); }
Term mk_and(const Term& a, const Term& b) { return mk_and(std::vector<Term>{a, b}); }
Term mk_or(std::vector<Term> ts) { return mk_junction(Op::Or, std::move(ts)); }
Term mk_or(const Term& a, const Term& b) { return mk_or(std::vector<Term>{a, b}); }

Term mk_ite(const Term& c, const Term& a, const Term& b) {
  require(c.sort().is_bool(), "ite condition must be Bool: " + c.to_string());
  require(a.sort() == b.sort(), "ite branches must have one sort: " + a.to_string() + ", " + b.to_string());
  return node(Op::Ite, a.sort(), {c, a, b});
}

Term mk_read(const Term& arr, const Term& idx) {
  require(arr.sort().is_array(), "read expects an array: " + arr.to_string());
  require(idx.sort().is_int(), "read index must be Int: " + idx.to_string());
  return node(Op::Read, arr.sort().element(), {arr, idx});
}

Term mk_write(const Term& arr, const Term& idx, const Term& val) {
  require(arr.sort().is_array(), "write expects an array: " + arr.to_string());
  require(idx.sort().is_int(), "write index must be Int: " + idx.to_string());
  require(val.sort() == arr.sort().element(), "written value has the wrong sort: " + val.to_string());
  return node(Op::Write, arr.sort(), {arr, idx, val});
}

Term mk_len(const Term& arr) {
  require(arr.sort().is_array(), "len expects an array: " + arr.to_string());
  return node(Op::Len, Sort::integer(), {arr});
}

Term mk_forall(std::vector<std::string> names, std::vector<Term> arrays, const Term& body) {
  require(names.size() == arrays.size(), "forall: bound names and arrays differ in number");
  require(body.sort().is_bool(), "forall body must be Bool");
  if (names.empty()) return body;
  for (const auto& a : arrays) require(a.sort().is_array(), "forall bound must range over an array");
  arrays.push_back(body);
  Term::Node n{Op::Forall, Sort::boolean(), 0, false, {}, std::move(arrays), std::move(names), 0};
  return make_node(std::move(n));
}

Term mk_neg(const Term& a) { return mk_mul(-1, a); }
Term mk_sub(const Term& a, const Term& b) { return mk_add(a, mk_neg(b)); }

Term mk_sum(const std::vector<Term>& ts) {
  if (ts.empty()) return mk_int(0);
  Term acc = ts.front();
  for (std::size_t i = 1; i < ts.size(); ++i) acc = mk_add(acc, ts[i]);
  return acc;
}

Term mk_lt(const Term& a, const Term& b) { return mk_leq(mk_add(a, mk_int(1)), b); }
Term mk_geq(const Term& a, const Term& b) { return mk_leq(b, a); }
Term mk_gt(const Term& a, const Term& b) { return mk_leq(mk_add(b, mk_int(1)), a); }
Term mk_neq(const Term& a, const Term& b) { return mk_not(mk_eq(a, b)); }
Term mk_implies(const Term& a, const Term& b) { return mk_or(mk_not(a), b); }

void collect_free_vars(const Term& t, SortEnv& out) {
  switch (t.op()) {
    case Op::Var:
      out.emplace(t.name(), t.sort());
      return;
    case Op::Forall: {
      SortEnv inner;
      collect_free_vars(t.body(), inner);
      for (const auto& b : t.bound()) inner.erase(b);
      out.insert(inner.begin(), inner.end());
      for (std::size_t i = 0; i + 1 < t.args().size(); ++i) collect_free_vars(t.arg(i), out);
      return;
    }
    default:
      for (const auto& a : t.args()) collect_free_vars(a, out);
  }
}

SortEnv free_vars(const Term& t) {
  SortEnv out;
  collect_free_vars(t, out);
  return out;
}

bool contains_op(const Term& t, Op op) {
  if (t.op() == op) return true;
  for (const auto& a : t.args())
    if (contains_op(a, op)) return true;
  return false;
}

std::string fresh_name(const std::string& base, std::set<std::string>& used) {
  if (used.insert(base).second) return base;
  for (std::size_t i = 1;; ++i) {
    std::string cand = base + "!" + std::to_string(i);
    if (used.insert(cand).second) return cand;
  }
}

namespace {

Term rebuild(const Term& t, std::vector<Term> args) {
  switch (t.op()) {
    case Op::Add:
      return mk_add(args[0], args[1]);
    case Op::Mul:
      return mk_mul(t.int_value(), args[0]);
    case Op::Leq:
      return mk_leq(args[0], args[1]);
    case Op::Eq:
      return mk_eq(args[0], args[1]);
    case Op::Not:
      return mk_not(args[0]);
    case Op::And:
      return mk_and(std::move(args));
    case Op::Or:
      return mk_or(std::move(args));
    case Op::Ite:
      return mk_ite(args[0], args[1], args[2]);
    case Op::Read:
      return mk_read(args[0], args[1]);
    case Op::Write:
      return mk_write(args[0], args[1], args[2]);
    case Op::Len:
      return mk_len(args[0]);
    case Op::Forall: {
      Term body = args.back();
      args.pop_back();
      return mk_forall(t.bound(), std::move(args), body);
    }
    default:
      return t;
  }
}

Term subst_rec(const Term& t, const Substitution& s, const std::set<std::string>& repl_fv) {
  if (s.empty()) return t;
  switch (t.op()) {
    case Op::IntConst:
    case Op::BoolConst:
      return t;
    case Op::Var: {
      auto it = s.find(t.name());
      if (it == s.end()) return t;
      if (it->second.sort() != t.sort())
        throw SortError("substitution for " + t.name() + " changes its sort from " + t.sort().to_string() +
                        " to " + it->second.sort().to_string());
      return it->second;
    }
    case Op::Forall: {
      std::vector<Term> arrays;
      for (std::size_t i = 0; i + 1 < t.args().size(); ++i) arrays.push_back(subst_rec(t.arg(i), s, repl_fv));
      Substitution inner = s;
      for (const auto& b : t.bound()) inner.erase(b);
      std::set<std::string> used(repl_fv);
      for (const auto& [n, _] : free_vars(t.body())) used.insert(n);
      for (const auto& b : t.bound()) used.insert(b);
      std::vector<std::string> names;
      for (const auto& b : t.bound()) {
        if (repl_fv.count(b)) {
          std::string fresh = fresh_name(b, used);
          inner[b] = mk_var(fresh, Sort::integer());
          names.push_back(fresh);
        } else {
          names.push_back(b);
        }
      }
      std::set<std::string> inner_fv(repl_fv);
      for (const auto& n : names) inner_fv.insert(n);
      Term body = subst_rec(t.body(), inner, inner_fv);
      return mk_forall(std::move(names), std::move(arrays), body);
    }
    default: {
      std::vector<Term> args;
      args.reserve(t.args().size());
      bool changed = false;
      for (const auto& a : t.args()) {
        args.push_back(subst_rec(a, s, repl_fv));
        changed = changed || !(args.back() == a);
      }
      return changed ? rebuild(t, std::move(args)) : t;
    }
  }
}

}  // namespace

Term substitute(const Term& t, const Substitution& s) {
  std::set<std::string> repl_fv;
  for (const auto& [_, r] : s)
    for (const auto& [n, __] : free_vars(r)) repl_fv.insert(n);
  return subst_rec(t, s, repl_fv);
}

Term simplify(const Term& t) {
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const auto& a : t.args()) args.push_back(simplify(a));
  switch (t.op()) {
    case Op::Add:
      if (args[0].is(Op::IntConst) && args[1].is(Op::IntConst))
        return mk_int(args[0].int_value() + args[1].int_value());
      if (args[0].is(Op::IntConst) && args[0].int_value() == 0) return args[1];
      if (args[1].is(Op::IntConst) && args[1].int_value() == 0) return args[0];
      break;
    case Op::Mul:
      if (args[0].is(Op::IntConst)) return mk_int(t.int_value() * args[0].int_value());
      if (t.int_value() == 1) return args[0];
      if (t.int_value() == 0) return mk_int(0);
      break;
    case Op::Leq:
      if (args[0].is(Op::IntConst) && args[1].is(Op::IntConst))
        return mk_bool(args[0].int_value() <= args[1].int_value());
      if (args[0] == args[1]) return mk_true();
      break;
    case Op::Eq:
      if (args[0] == args[1]) return mk_true();
      if (args[0].is(Op::IntConst) && args[1].is(Op::IntConst)) return mk_false();
      if (args[0].is(Op::BoolConst) && args[1].is(Op::BoolConst)) return mk_false();
      break;
    case Op::Not:
      if (args[0].is(Op::BoolConst)) return mk_bool(!args[0].bool_value());
      if (args[0].is(Op::Not)) return args[0].arg(0);
      break;
    case Op::And:
    case Op::Or: {
      const bool is_and = t.op() == Op::And;
      std::vector<Term> kept;
      std::set<Term> seen;
      for (auto& a : args) {
        if (a.is(Op::BoolConst)) {
          if (a.bool_value() != is_and) return a;  // absorbing element
          continue;
        }
        if (seen.insert(a).second) kept.push_back(a);
      }
      return is_and ? mk_and(std::move(kept)) : mk_or(std::move(kept));
    }
    case Op::Ite:
      if (args[0].is(Op::BoolConst)) return args[0].bool_value() ? args[1] : args[2];
      if (args[1] == args[2]) return args[1];
      break;
    case Op::Forall:
      if (args.back().is(Op::BoolConst) && args.back().bool_value()) return args.back();
      break;
    default:
      break;
  }
  return rebuild(t, std::move(args));
}

}  // namespace qice
