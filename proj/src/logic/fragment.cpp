#include "qice/logic/fragment.hpp"

#include <map>
#include <set>

#include "qice/logic/linear.hpp"

namespace qice {
namespace {

constexpr std::size_t kMaxClauses = 4096;

struct Lit {
  Term atom;
  bool positive;
};
using Clause = std::vector<Lit>;

struct Violation {
  std::string msg;
};

[[noreturn]] void fail(const std::string& msg) { throw Violation{msg}; }

// Negation normal form with Not only directly above atoms; bool equalities and
// ite over formulas are expanded.
Term nnf(const Term& t, bool pos) {
  switch (t.op()) {
    case Op::BoolConst:
      return mk_bool(t.bool_value() == pos);
    case Op::Not:
      return nnf(t.arg(0), !pos);
    case Op::And:
    case Op::Or: {
      std::vector<Term> parts;
      for (const auto& a : t.args()) parts.push_back(nnf(a, pos));
      return (t.op() == Op::And) == pos ? mk_and(std::move(parts)) : mk_or(std::move(parts));
    }
    case Op::Ite:
      if (t.sort().is_bool())
        return nnf(mk_or(mk_and(t.arg(0), t.arg(1)), mk_and(mk_not(t.arg(0)), t.arg(2))), pos);
      break;
    case Op::Eq:
      if (t.arg(0).sort().is_bool())
        return nnf(mk_or(mk_and(t.arg(0), t.arg(1)), mk_and(mk_not(t.arg(0)), mk_not(t.arg(1)))), pos);
      if (t.arg(0).sort().is_array()) fail("array equality in quantified part: " + t.to_string());
      break;
    case Op::Forall:
      fail("nested quantifier: " + t.to_string());
    default:
      break;
  }
  return pos ? t : mk_not(t);
}

std::vector<Clause> cnf(const Term& t) {
  if (t.is_true()) return {};
  if (t.is_false()) return {Clause{}};
  if (t.is(Op::And)) {
    std::vector<Clause> out;
    for (const auto& a : t.args()) {
      auto part = cnf(a);
      out.insert(out.end(), part.begin(), part.end());
      if (out.size() > kMaxClauses) fail("clausal form exceeds " + std::to_string(kMaxClauses) + " clauses");
    }
    return out;
  }
  if (t.is(Op::Or)) {
    std::vector<Clause> acc{Clause{}};
    for (const auto& a : t.args()) {
      auto part = cnf(a);
      std::vector<Clause> next;
      for (const auto& c1 : acc)
        for (const auto& c2 : part) {
          Clause c = c1;
          c.insert(c.end(), c2.begin(), c2.end());
          next.push_back(std::move(c));
          if (next.size() > kMaxClauses) fail("clausal form exceeds " + std::to_string(kMaxClauses) + " clauses");
        }
      acc = std::move(next);
    }
    return acc;
  }
  if (t.is(Op::Not)) return {Clause{Lit{t.arg(0), false}}};
  return {Clause{Lit{t, true}}};
}

class Checker {
 public:
  explicit Checker(const QuantifiedProperty& p) : p_(p) {
    for (const auto& b : p.blocks) {
      if (!b.array.is(Op::Var)) fail("quantified array must be a variable: " + b.array.to_string());
      for (const auto& k : b.vars) owner_[k] = b.array.name();
    }
  }

  void run() {
    if (contains_op(p_.psi, Op::Forall)) fail("quantifier inside the quantifier-free part: " + p_.psi.to_string());
    check_no_write(p_.guard);
    check_no_write(p_.matrix);
    check_reads(p_.guard);
    check_reads(p_.matrix);
    for (const auto& clause : cnf(nnf(mk_or(mk_not(p_.guard), p_.matrix), true))) check_clause(clause);
  }

 private:
  void check_no_write(const Term& t) {
    if (t.is(Op::Write)) fail("array write in quantified part: " + t.to_string());
    for (const auto& a : t.args()) check_no_write(a);
  }

  bool mentions_uvar(const Term& t) const {
    if (t.is(Op::Var)) return owner_.count(t.name()) > 0;
    for (const auto& a : t.args())
      if (mentions_uvar(a)) return true;
    return false;
  }

  // Every read whose index mentions a quantifier variable must be a[k] with k
  // from the block of a.
  void check_reads(const Term& t) {
    if (t.is(Op::Read) && mentions_uvar(t.arg(1))) {
      const Term& idx = t.arg(1);
      if (!idx.is(Op::Var)) fail("index is not a single quantifier variable: " + t.to_string());
      if (!t.arg(0).is(Op::Var) || owner_.at(idx.name()) != t.arg(0).name())
        fail("quantifier variable " + idx.name() + " reads an array outside its block: " + t.to_string());
    }
    for (const auto& a : t.args()) check_reads(a);
  }

  bool is_uvar(const Term& t) const { return t.is(Op::Var) && owner_.count(t.name()); }
  bool is_quantified_read(const Term& t) const { return t.is(Op::Read) && mentions_uvar(t.arg(1)); }

  struct Shape {
    std::vector<std::pair<Term, BigInt>> uvars;
    bool has_reads = false;
  };

  // Splits a linear form; `evars` collects scalar names appearing outside
  // reads, `index_evars` those inside index expressions of reads.
  Shape shape(const LinearForm& f, std::set<std::string>& evars, std::set<std::string>& index_evars,
              const Term& origin) const {
    Shape s;
    for (const auto& [atom, c] : f.coeffs) {
      if (is_uvar(atom)) {
        s.uvars.emplace_back(atom, c);
      } else if (is_quantified_read(atom)) {
        s.has_reads = true;
      } else if (atom.is(Op::Var)) {
        evars.insert(atom.name());
      } else if (atom.is(Op::Len) && atom.arg(0).is(Op::Var)) {
        // lengths count as existential scalars
      } else if (atom.is(Op::Read) && atom.arg(0).is(Op::Var)) {
        // eavar[piexpr]
        for (const auto& [a2, _] : linearize(atom.arg(1)).coeffs) {
          if (a2.is(Op::Var))
            index_evars.insert(a2.name());
          else if (!(a2.is(Op::Len) && a2.arg(0).is(Op::Var)))
            fail("index expression outside the grammar: " + atom.to_string() + " in " + origin.to_string());
        }
      } else {
        fail("term outside the grammar: " + atom.to_string() + " in " + origin.to_string());
      }
    }
    return s;
  }

  // Is `f <= 0` (or `f = 0`) an index atom? Two quantifier variables may only
  // be compared with each other directly.
  static bool index_atom_ok(const Shape& s, const LinearForm& f) {
    if (s.uvars.size() == 1) return abs(s.uvars[0].second) == 1;
    if (s.uvars.size() == 2) {
      const bool opposite = s.uvars[0].second + s.uvars[1].second == 0 && abs(s.uvars[0].second) == 1;
      return opposite && f.coeffs.size() == 2 && f.constant == 0;
    }
    return false;
  }

  void check_clause(const Clause& clause) {
    std::set<std::string> index_vars;
    std::set<std::string> value_vars;
    for (const auto& lit : clause) {
      const Term& a = lit.atom;
      if (!mentions_uvar(a)) continue;  // ground literal
      if (a.sort().is_bool() && a.is(Op::Read)) continue;  // boolean array cell
      if (!(a.is(Op::Leq) || a.is(Op::Eq)) || !a.arg(0).sort().is_int())
        fail("atom outside the grammar: " + a.to_string());
      LinearForm f = linearize(a.arg(0));
      f.add(linearize(a.arg(1)), -1);  // f <= 0  or  f = 0
      std::set<std::string> evars;
      std::set<std::string> idx_evars;
      Shape s = shape(f, evars, idx_evars, a);
      if (s.has_reads) {
        if (!s.uvars.empty()) fail("quantifier variable used as a value: " + a.to_string());
        value_vars.insert(evars.begin(), evars.end());
        index_vars.insert(idx_evars.begin(), idx_evars.end());
        continue;
      }
      // Index literal: the guard contains its negation.
      bool ok = true;
      if (a.is(Op::Leq) && lit.positive) {
        LinearForm neg;  // not(f <= 0)  <=>  -f + 1 <= 0
        neg.add(f, -1);
        neg.constant += 1;
        ok = index_atom_ok(s, neg);
      } else if (a.is(Op::Leq)) {
        ok = index_atom_ok(s, f);
      } else if (lit.positive) {
        // not(f = 0)  <=>  f + 1 <= 0  or  -f + 1 <= 0
        LinearForm f1 = f;
        f1.constant += 1;
        LinearForm f2;
        f2.add(f, -1);
        f2.constant += 1;
        ok = index_atom_ok(s, f1) && index_atom_ok(s, f2);
      } else {
        ok = index_atom_ok(s, f);
      }
      if (!ok) fail("index constraint outside the guard grammar: " + std::string(lit.positive ? "" : "not ") + a.to_string());
      index_vars.insert(evars.begin(), evars.end());
      index_vars.insert(idx_evars.begin(), idx_evars.end());
    }
    for (const auto& v : value_vars)
      if (index_vars.count(v)) fail("variable " + v + " occurs both in index and value positions");
  }

  const QuantifiedProperty& p_;
  std::map<std::string, std::string> owner_;
};

}  // namespace

FragmentResult check_fragment(const QuantifiedProperty& p) {
  try {
    Checker(p).run();
  } catch (const Violation& v) {
    return {false, v.msg};
  }
  return {};
}

}  // namespace qice
