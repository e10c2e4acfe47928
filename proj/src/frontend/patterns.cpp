#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "qice/chc/system.hpp"
#include "qice/frontend/frontend.hpp"
#include "qice/logic/errors.hpp"

namespace qice {

namespace {

using Stmts = std::vector<StmtPtr>;

constexpr std::size_t kMaxPatternArity = 3;

// Program variables stay symbolic; quantified bodies are taken as is.
Term to_term(const Expr& e) {
  switch (e.kind) {
    case ExprKind::IntLit:
      return mk_int(e.value);
    case ExprKind::BoolLit:
      return mk_bool(e.flag);
    case ExprKind::Var:
      return mk_var(e.name, e.sort);
    case ExprKind::Read:
      return mk_read(mk_var(e.name, Sort::array(e.sort)), to_term(*e.args[0]));
    case ExprKind::Unary:
      return e.op == "-" ? mk_neg(to_term(*e.args[0])) : mk_not(to_term(*e.args[0]));
    case ExprKind::Binary: {
      Term a = to_term(*e.args[0]), b = to_term(*e.args[1]);
      const std::string& op = e.op;
      if (op == "+") return mk_add(a, b);
      if (op == "-") return mk_sub(a, b);
      if (op == "*") {
        Term ca = simplify(a), cb = simplify(b);
        if (ca.is(Op::IntConst)) return mk_mul(ca.int_value(), b);
        if (cb.is(Op::IntConst)) return mk_mul(cb.int_value(), a);
        throw UnsupportedError("nonlinear arithmetic is not supported");
      }
      if (op == "<") return mk_lt(a, b);
      if (op == "<=") return mk_leq(a, b);
      if (op == ">") return mk_gt(a, b);
      if (op == ">=") return mk_geq(a, b);
      if (op == "==") return mk_eq(a, b);
      if (op == "!=") return mk_neq(a, b);
      if (op == "&&") return mk_and(a, b);
      if (op == "||") return mk_or(a, b);
      return mk_implies(a, b);
    }
    case ExprKind::Forall:
      return to_term(*e.args[0]);
    case ExprKind::Embedded:
      return e.term;
    case ExprKind::Call:
      return mk_true();
  }
  return mk_true();
}

void atoms(const Term& t, std::vector<Term>& out) {
  if ((t.is(Op::Leq) || t.is(Op::Eq)) && t.arg(0).sort().is_int()) {
    out.push_back(t);
    return;
  }
  if (t.sort().is_bool())
    for (const auto& a : t.args()) atoms(a, out);
}

// Replaces maximal non-arithmetic integer subterms with hole placeholders.
Term abstract(const Term& t, std::vector<Term>& leaves) {
  switch (t.op()) {
    case Op::IntConst:
      return t;
    case Op::Add:
      return mk_add(abstract(t.arg(0), leaves), abstract(t.arg(1), leaves));
    case Op::Mul:
      return mk_mul(t.int_value(), abstract(t.arg(0), leaves));
    case Op::Leq:
      return mk_leq(abstract(t.arg(0), leaves), abstract(t.arg(1), leaves));
    case Op::Eq:
      return mk_eq(abstract(t.arg(0), leaves), abstract(t.arg(1), leaves));
    default: {
      auto it = std::find(leaves.begin(), leaves.end(), t);
      std::size_t i = static_cast<std::size_t>(it - leaves.begin());
      if (it == leaves.end()) leaves.push_back(t);
      return mk_var("#" + std::to_string(i), Sort::integer());
    }
  }
}

IntClass leaf_class(const Term& leaf, const std::map<std::string, IntClass>& classes) {
  if (leaf.is(Op::Read)) return IntClass::Value;
  if (leaf.is(Op::Len)) return IntClass::Index;
  if (leaf.is(Op::Var)) {
    std::string name = leaf.name();
    if (!name.empty() && name.back() == '\'') name.pop_back();
    auto it = classes.find(name);
    if (it != classes.end()) return it->second;
  }
  return IntClass::Any;
}

HoleKind leaf_kind(const Term& leaf, const std::set<std::string>& bound) {
  if (leaf.is(Op::Read)) return HoleKind::Cell;
  if (leaf.is(Op::Len)) return HoleKind::Length;
  if (leaf.is(Op::Var)) return bound.count(leaf.name()) ? HoleKind::Quantifier : HoleKind::Scalar;
  return HoleKind::Any;
}

std::optional<Pattern> pattern_of(const Term& atom, const std::map<std::string, IntClass>& classes,
                                  const std::set<std::string>& bound) {
  std::vector<Term> leaves;
  Term shape = abstract(atom, leaves);
  std::size_t m = leaves.size();
  if (m == 0 || m > kMaxPatternArity) return std::nullopt;
  // Canonical hole numbering: the smallest rendering over all permutations.
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::optional<Term> best;
  std::string best_str;
  std::vector<IntClass> best_holes;
  std::vector<HoleKind> best_kinds;
  do {
    Substitution sub;
    for (std::size_t i = 0; i < m; ++i) sub["#" + std::to_string(i)] = mk_var(Pattern::hole(perm[i]), Sort::integer());
    Term cand = simplify(substitute(shape, sub));
    std::string s = cand.to_string();
    std::vector<IntClass> holes(m);
    std::vector<HoleKind> kinds(m);
    for (std::size_t i = 0; i < m; ++i) {
      holes[perm[i]] = leaf_class(leaves[i], classes);
      kinds[perm[i]] = leaf_kind(leaves[i], bound);
    }
    if (!best || s < best_str || (s == best_str && std::tie(holes, kinds) < std::tie(best_holes, best_kinds))) {
      best = cand;
      best_str = s;
      best_holes = std::move(holes);
      best_kinds = std::move(kinds);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best->is(Op::BoolConst)) return std::nullopt;
  if (free_vars(*best).size() != m) return std::nullopt;
  return Pattern{m, *best, best_holes, best_kinds};
}

// Formulas relating program variables, for the index/value classification.
// Variable names are unique per procedure; argument passing links callers
// and callees.
void facts_of(const Stmts& ss, const ProgramAst& ast, const std::string& proc, std::vector<Term>& out);

template <typename F>
void walk_returns(const Stmts& ss, const F& f) {
  for (const auto& s : ss) {
    if (s->kind == StmtKind::Return && s->value) f(*s->value);
    walk_returns(s->body, f);
    walk_returns(s->else_body, f);
  }
}

Term qualified(const Expr& e, const std::string& proc) {
  Substitution sub;
  Term t = to_term(e);
  for (const auto& [n, s] : free_vars(t)) sub[n] = mk_var(proc + "::" + n, s);
  return substitute(t, sub);
}

void call_facts(const Expr& call, const ProgramAst& ast, const std::string& proc, std::vector<Term>& out,
                const std::optional<Term>& target) {
  const Procedure* callee = ast.find(call.name);
  if (!callee) return;
  for (std::size_t i = 0; i < call.args.size() && i < callee->params.size(); ++i) {
    const auto& d = callee->params[i];
    if (!d.sort.is_int()) {
      if (d.sort.is_array() && call.args[i]->kind == ExprKind::Var) {
        // alias the two arrays' index and value spaces
        Term a = mk_var(proc + "::" + call.args[i]->name, d.sort);
        Term b = mk_var(call.name + "::" + d.name, d.sort);
        out.push_back(mk_eq(mk_len(a), mk_len(b)));
        out.push_back(mk_eq(mk_read(a, mk_int(0)), mk_read(b, mk_int(0))));
      }
      continue;
    }
    out.push_back(mk_eq(qualified(*call.args[i], proc), mk_var(call.name + "::" + d.name, d.sort)));
  }
  if (target && callee->result && callee->result->is_int()) {
    // every value the callee returns flows into the target
    walk_returns(callee->body, [&](const Expr& v) {
      if (v.sort.is_int()) out.push_back(mk_eq(*target, qualified(v, call.name)));
    });
  }
}

void facts_of(const Stmts& ss, const ProgramAst& ast, const std::string& proc, std::vector<Term>& out) {
  for (const auto& sp : ss) {
    const Stmt& s = *sp;
    auto var = [&](Sort sort) { return mk_var(proc + "::" + s.name, sort); };
    switch (s.kind) {
      case StmtKind::VarDecl:
      case StmtKind::Assign:
        if (s.value && s.value->kind == ExprKind::Call)
          call_facts(*s.value, ast, proc, out, s.value->sort.is_int() ? std::optional<Term>(var(Sort::integer())) : std::nullopt);
        else if (s.value && s.value->sort.is_int())
          out.push_back(mk_eq(var(Sort::integer()), qualified(*s.value, proc)));
        else if (s.value)
          out.push_back(qualified(*s.value, proc));
        break;
      case StmtKind::ArrayDecl:
        out.push_back(mk_eq(mk_len(var(s.sort)), qualified(*s.value, proc)));
        break;
      case StmtKind::ArrayStore:
        if (s.value->sort.is_int()) {
          Term cell = mk_read(mk_var(proc + "::" + s.name, Sort::array(Sort::integer())), qualified(*s.index, proc));
          out.push_back(mk_eq(cell, qualified(*s.value, proc)));
        }
        break;
      case StmtKind::CallStmt:
        call_facts(*s.value, ast, proc, out, std::nullopt);
        break;
      case StmtKind::If:
      case StmtKind::While:
      case StmtKind::Assume:
      case StmtKind::Assert:
      case StmtKind::Return:
        if (s.value) out.push_back(qualified(*s.value, proc));
        break;
      default:
        break;
    }
    facts_of(s.body, ast, proc, out);
    facts_of(s.else_body, ast, proc, out);
  }
}

void facts_of(const Procedure& p, const ProgramAst& ast, std::vector<Term>& out) {
  facts_of(p.body, ast, p.name, out);
}

void collect(const Stmts& ss, const std::string& proc, std::vector<Term>& out);

bool mentions(const Expr& e, const std::string& name) {
  if ((e.kind == ExprKind::Var || e.kind == ExprKind::Read) && e.name == name) return true;
  for (const auto& a : e.args)
    if (a && mentions(*a, name)) return true;
  return false;
}

void collect(const Stmt& s, const std::string& proc, std::vector<Term>& out) {
  switch (s.kind) {
    case StmtKind::If:
    case StmtKind::While:
    case StmtKind::Assume:
    case StmtKind::Assert:
      atoms(qualified(*s.value, proc), out);
      break;
    // The assigned location is the post-state. Self-updates (i = i + 1) only
    // relate two states of one variable and give no state predicate.
    case StmtKind::VarDecl:
    case StmtKind::Assign:
      if (s.value && s.value->kind != ExprKind::Call && s.value->sort.is_int() && !mentions(*s.value, s.name))
        out.push_back(mk_eq(mk_var(proc + "::" + s.name + "'", Sort::integer()), qualified(*s.value, proc)));
      break;
    case StmtKind::ArrayStore:
      if (s.value->sort.is_int()) {
        Term cell = mk_read(mk_var(proc + "::" + s.name + "'", Sort::array(Sort::integer())), qualified(*s.index, proc));
        out.push_back(mk_eq(cell, qualified(*s.value, proc)));
      }
      break;
    default:
      break;
  }
  collect(s.body, proc, out);
  collect(s.else_body, proc, out);
}

void collect(const Stmts& ss, const std::string& proc, std::vector<Term>& out) {
  for (const auto& s : ss) collect(*s, proc, out);
}

void bound_names(const Term& t, const std::string& proc, std::set<std::string>& out) {
  if (t.is(Op::Forall))
    for (const auto& n : t.bound()) out.insert(proc + "::" + n);
  for (const auto& a : t.args()) bound_names(a, proc, out);
}

void bound_names(const Expr& e, const std::string& proc, std::set<std::string>& out) {
  if (e.kind == ExprKind::Forall)
    for (const auto& n : e.bound) out.insert(proc + "::" + n);
  if (e.kind == ExprKind::Embedded) bound_names(e.term, proc, out);
  for (const auto& a : e.args)
    if (a) bound_names(*a, proc, out);
}

void bound_names(const Stmts& ss, const std::string& proc, std::set<std::string>& out) {
  for (const auto& sp : ss) {
    if (sp->value) bound_names(*sp->value, proc, out);
    bound_names(sp->body, proc, out);
    bound_names(sp->else_body, proc, out);
  }
}

}  // namespace

std::vector<Pattern> extract_patterns(const ProgramAst& ast) {
  if (!ast.typed) throw Error("extract_patterns requires a typechecked program");
  std::vector<Term> found;
  std::set<std::string> bound;
  for (const auto& p : ast.procedures) {
    collect(p.body, p.name, found);
    bound_names(p.body, p.name, bound);
  }
  std::vector<Term> facts;
  for (const auto& p : ast.procedures) facts_of(p, ast, facts);
  const auto classes = infer_var_classes(facts);
  std::vector<Pattern> out;
  for (const auto& a : found) {
    auto p = pattern_of(a, classes, bound);
    if (p && std::find(out.begin(), out.end(), *p) == out.end()) out.push_back(*p);
  }
  return out;
}

}  // namespace qice
