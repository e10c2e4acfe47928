#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "qice/frontend/frontend.hpp"
#include "qice/logic/errors.hpp"

namespace qice {

namespace {

using Stmts = std::vector<StmtPtr>;

// A continuation: the rest of a statement list, or a jump back to a loop head.
struct Frame {
  const Stmts* stmts = nullptr;
  std::size_t idx = 0;
  const Stmt* loop = nullptr;
};
using Frames = std::vector<Frame>;

// One symbolic path from a cut point: current SSA value of every variable in
// scope, path constraints and the predicate applications assumed so far.
struct Path {
  std::map<std::string, Term> env;
  std::vector<Term> cons;
  std::vector<Application> body;
  std::set<std::string> used;
};

struct LoopInfo {
  std::string pred;
  std::vector<Param> params;
  Frames cont;
};

std::string ghost(const std::string& p) { return p + "!in"; }

void expr_reads(const Expr& e, std::set<std::string>& out) {
  switch (e.kind) {
    case ExprKind::Var:
    case ExprKind::Read:
      out.insert(e.name);
      break;
    case ExprKind::Forall:
      out.insert(e.bound_arrays.begin(), e.bound_arrays.end());
      break;
    case ExprKind::Embedded:
      for (const auto& [n, s] : free_vars(e.term)) out.insert(n);
      break;
    default:
      break;
  }
  for (const auto& a : e.args) expr_reads(*a, out);
}

void stmt_reads(const Stmts& ss, std::size_t from, std::set<std::string>& out);

void stmt_reads(const Stmt& s, std::set<std::string>& out) {
  if (s.value) expr_reads(*s.value, out);
  if (s.index) expr_reads(*s.index, out);
  if (s.kind == StmtKind::ArrayStore) out.insert(s.name);
  stmt_reads(s.body, 0, out);
  stmt_reads(s.else_body, 0, out);
}

void stmt_reads(const Stmts& ss, std::size_t from, std::set<std::string>& out) {
  for (std::size_t i = from; i < ss.size(); ++i) stmt_reads(*ss[i], out);
}

template <typename F>
void walk(const Stmts& ss, const F& f) {
  for (const auto& s : ss) {
    f(*s);
    walk(s->body, f);
    walk(s->else_body, f);
  }
}

template <typename F>
void walk_calls(const Expr& e, const F& f) {
  if (e.kind == ExprKind::Call) f(e);
  for (const auto& a : e.args) walk_calls(*a, f);
}

class Generator {
 public:
  explicit Generator(const ProgramAst& ast) : ast_(ast) {}

  ChcOutput run() {
    if (!ast_.typed) throw Error("gen_chc requires a typechecked program");
    written_fixpoint();
    for (const auto& p : ast_.procedures) {
      pred_names_.insert(p.name);
    }
    for (const auto& p : ast_.procedures) {
      if (p.name == "main") continue;
      PredicateSig pre{fresh_name(p.name + "_pre", pred_names_), {}};
      for (const auto& d : p.params) pre.params.emplace_back(d.name, d.sort);
      PredicateSig post{fresh_name(p.name + "_post", pred_names_), pre.params};
      std::set<std::string> names;
      for (const auto& d : p.params) names.insert(d.name);
      if (p.result) post.params.emplace_back(fresh_name("res", names), *p.result);
      for (std::size_t i : written_[p.name]) {
        const auto& d = p.params[i];
        post.params.emplace_back(fresh_name(d.name + "!out", names), d.sort);
      }
      pre_[p.name] = pre.name;
      post_[p.name] = post.name;
      out_.system.predicates.push_back(pre);
      out_.system.predicates.push_back(post);
      out_.locations.push_back({pre.name, p.name, "pre", p.pos});
      out_.locations.push_back({post.name, p.name, "post", p.pos});
    }
    for (const auto& p : ast_.procedures) procedure(p);
    auto& cs = out_.system.clauses;
    std::stable_partition(cs.begin(), cs.end(), [](const Clause& c) { return c.head.has_value(); });
    out_.system.validate();
    return std::move(out_);
  }

 private:
  const ProgramAst& ast_;
  ChcOutput out_;
  std::set<std::string> pred_names_;
  std::map<std::string, std::string> pre_, post_;
  std::map<std::string, std::set<std::size_t>> written_;  // procedure -> written array parameters

  const Procedure* proc_ = nullptr;
  std::set<std::string> ghosts_;
  std::map<std::string, std::size_t> order_;
  std::map<const Stmt*, LoopInfo> loops_;
  std::deque<const Stmt*> pending_;
  std::size_t loop_count_ = 0;

  // Array parameters a procedure may modify, directly or through callees.
  void written_fixpoint() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& p : ast_.procedures) {
        auto index_of = [&](const std::string& name) -> std::optional<std::size_t> {
          for (std::size_t i = 0; i < p.params.size(); ++i)
            if (p.params[i].name == name) return i;
          return std::nullopt;
        };
        std::set<std::size_t>& w = written_[p.name];
        std::size_t before = w.size();
        walk(p.body, [&](const Stmt& s) {
          if (s.kind == StmtKind::ArrayStore)
            if (auto i = index_of(s.name)) w.insert(*i);
          if (s.value)
            walk_calls(*s.value, [&](const Expr& call) {
              for (std::size_t j : written_[call.name])
                if (auto i = index_of(call.args[j]->name)) w.insert(*i);
            });
        });
        if (w.size() != before) changed = true;
      }
    }
  }

  // Names of the arrays a call overwrites.
  std::vector<std::string> call_outputs(const Expr& call) {
    std::vector<std::string> out;
    for (std::size_t j : written_[call.name]) out.push_back(call.args[j]->name);
    return out;
  }

  void procedure(const Procedure& p) {
    proc_ = &p;
    loops_.clear();
    pending_.clear();
    loop_count_ = 0;
    order_.clear();
    ghosts_.clear();
    for (const auto& v : ast_.vars)
      if (v.procedure == p.name) order_.emplace(v.unique, order_.size());

    bool is_main = p.name == "main";
    if (!is_main) {
      std::set<std::string> assigned;
      walk(p.body, [&](const Stmt& s) {
        if (s.kind == StmtKind::Assign || s.kind == StmtKind::ArrayStore) assigned.insert(s.name);
        if (s.value)
          walk_calls(*s.value, [&](const Expr& call) {
            for (const auto& a : call_outputs(call)) assigned.insert(a);
          });
      });
      for (const auto& d : p.params)
        if (assigned.count(d.name)) {
          ghosts_.insert(d.name);
          order_.emplace(ghost(d.name), order_.size());
        }
    }

    Path st;
    std::vector<Term> args;
    for (const auto& d : p.params) {
      Term v = mk_var(d.name, d.sort);
      st.env[d.name] = v;
      st.used.insert(d.name);
      if (ghosts_.count(d.name)) {
        st.env[ghost(d.name)] = v;
        st.used.insert(ghost(d.name));
      }
      if (d.is_unsigned) st.cons.push_back(mk_geq(v, mk_int(0)));
      args.push_back(v);
    }
    if (!is_main) st.body.push_back(Application{pre_.at(p.name), args});
    exec(std::move(st), Frames{Frame{&p.body, 0, nullptr}});
    while (!pending_.empty()) {
      const Stmt* loop = pending_.front();
      pending_.pop_front();
      loop_head(loop);
    }
  }

  Term term(const Expr& e, const std::map<std::string, Term>& env) const {
    switch (e.kind) {
      case ExprKind::IntLit:
        return mk_int(e.value);
      case ExprKind::BoolLit:
        return mk_bool(e.flag);
      case ExprKind::Var: {
        auto it = env.find(e.name);
        if (it == env.end()) throw Error("internal error: no value for '" + e.name + "'");
        return it->second;
      }
      case ExprKind::Read:
        return mk_read(env.at(e.name), term(*e.args[0], env));
      case ExprKind::Unary:
        return e.op == "-" ? mk_neg(term(*e.args[0], env)) : mk_not(term(*e.args[0], env));
      case ExprKind::Binary: {
        Term a = term(*e.args[0], env), b = term(*e.args[1], env);
        const std::string& op = e.op;
        if (op == "+") return mk_add(a, b);
        if (op == "-") return mk_sub(a, b);
        if (op == "*") {
          if (a.is(Op::IntConst)) return mk_mul(a.int_value(), b);
          Term ca = simplify(a), cb = simplify(b);
          if (cb.is(Op::IntConst)) return mk_mul(cb.int_value(), a);
          if (ca.is(Op::IntConst)) return mk_mul(ca.int_value(), b);
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
      case ExprKind::Forall: {
        std::map<std::string, Term> inner = env;
        std::vector<Term> arrays;
        for (std::size_t i = 0; i < e.bound.size(); ++i) {
          inner[e.bound[i]] = mk_var(e.bound[i], Sort::integer());
          arrays.push_back(env.at(e.bound_arrays[i]));
        }
        return mk_forall(e.bound, arrays, term(*e.args[0], inner));
      }
      case ExprKind::Embedded: {
        Substitution sub;
        for (const auto& [n, s] : free_vars(e.term)) sub[n] = env.at(n);
        return substitute(e.term, sub);
      }
      case ExprKind::Call:
        throw Error("internal error: call inside an expression");
    }
    throw Error("internal error: bad expression");
  }

  void emit(const Path& st, std::optional<Application> head) {
    Clause c;
    c.body = st.body;
    for (auto& b : c.body)
      for (auto& a : b.args) a = simplify(a);
    std::vector<Term> cons;
    for (const auto& t : st.cons) cons.push_back(simplify(t));
    c.constraint = mk_and(cons);
    c.head = std::move(head);
    if (c.head)
      for (auto& a : c.head->args) a = simplify(a);
    SortEnv vars;
    for (const auto& b : c.body)
      for (const auto& a : b.args) collect_free_vars(a, vars);
    collect_free_vars(c.constraint, vars);
    if (c.head)
      for (const auto& a : c.head->args) collect_free_vars(a, vars);
    c.vars.assign(vars.begin(), vars.end());
    out_.system.clauses.push_back(std::move(c));
  }

  // SSA: a fresh clause variable bound to `value` (or unconstrained).
  void define(Path& st, const std::string& name, Sort sort, const std::optional<Term>& value) {
    Term v = mk_var(fresh_name(name, st.used), sort);
    if (value) st.cons.push_back(mk_eq(v, *value));
    st.env[name] = v;
  }

  std::vector<Param> live(const Path& st, const Stmt* loop, const Frames& cont) {
    std::set<std::string> reads;
    expr_reads(*loop->value, reads);
    stmt_reads(loop->body, 0, reads);
    for (const auto& f : cont) {
      if (f.loop) {
        expr_reads(*f.loop->value, reads);
        stmt_reads(f.loop->body, 0, reads);
      } else {
        stmt_reads(*f.stmts, f.idx, reads);
      }
    }
    if (proc_->name != "main") {
      for (const auto& d : proc_->params) reads.insert(d.name);
      for (const auto& g : ghosts_) reads.insert(ghost(g));
    }
    std::vector<std::string> names;
    for (const auto& [n, t] : st.env)
      if (reads.count(n)) names.push_back(n);
    std::sort(names.begin(), names.end(),
              [&](const std::string& a, const std::string& b) { return order_.at(a) < order_.at(b); });
    std::vector<Param> out;
    for (const auto& n : names) out.emplace_back(n, st.env.at(n).sort());
    return out;
  }

  void reach_loop(const Path& st, const Stmt* loop, const Frames& cont) {
    auto it = loops_.find(loop);
    if (it == loops_.end()) {
      std::string base = (proc_->name == "main" ? "I" : proc_->name + "_I") + std::to_string(loop_count_++);
      LoopInfo info{fresh_name(base, pred_names_), live(st, loop, cont), cont};
      out_.system.predicates.push_back(PredicateSig{info.pred, info.params});
      out_.locations.push_back({info.pred, proc_->name, "loop", loop->pos});
      it = loops_.emplace(loop, std::move(info)).first;
      pending_.push_back(loop);
    }
    jump(st, it->second);
  }

  void jump(const Path& st, const LoopInfo& info) {
    Application head{info.pred, {}};
    for (const auto& [n, s] : info.params) {
      auto v = st.env.find(n);
      if (v == st.env.end()) throw Error("internal error: '" + n + "' undefined at loop head");
      head.args.push_back(v->second);
    }
    emit(st, head);
  }

  void loop_head(const Stmt* loop) {
    const LoopInfo& info = loops_.at(loop);
    Path st;
    std::vector<Term> args;
    for (const auto& [n, s] : info.params) {
      Term v = mk_var(n, s);
      st.env[n] = v;
      st.used.insert(n);
      args.push_back(v);
    }
    st.body.push_back(Application{info.pred, args});
    Term cond = term(*loop->value, st.env);

    Path enter = st;
    enter.cons.push_back(cond);
    Frames f = info.cont;
    f.push_back(Frame{nullptr, 0, loop});
    f.push_back(Frame{&loop->body, 0, nullptr});
    exec(std::move(enter), std::move(f));

    Path leave = st;
    leave.cons.push_back(mk_not(cond));
    exec(std::move(leave), info.cont);
  }

  void finish(const Path& st, const Expr* value) {
    if (proc_->name == "main") return;
    const PredicateSig& post = out_.system.sig(post_.at(proc_->name));
    Path fin = st;
    Application head{post.name, {}};
    for (const auto& d : proc_->params)
      head.args.push_back(ghosts_.count(d.name) ? fin.env.at(ghost(d.name)) : fin.env.at(d.name));
    if (proc_->result) {
      if (value) {
        head.args.push_back(term(*value, fin.env));
      } else {
        Term r = mk_var(fresh_name("res", fin.used), *proc_->result);
        head.args.push_back(r);
      }
    }
    for (std::size_t i : written_[proc_->name]) head.args.push_back(fin.env.at(proc_->params[i].name));
    emit(fin, head);
  }

  void call(Path& st, const Expr& e, const std::string& target, bool is_unsigned) {
    const Procedure& callee = *ast_.find(e.name);
    std::vector<Term> args;
    for (const auto& a : e.args) args.push_back(term(*a, st.env));
    emit(st, Application{pre_.at(callee.name), args});
    Application post{post_.at(callee.name), args};
    if (callee.result) {
      Term r = mk_var(fresh_name(target.empty() ? "ret" : target, st.used), *callee.result);
      post.args.push_back(r);
      if (!target.empty()) {
        st.env[target] = r;
        if (is_unsigned) st.cons.push_back(mk_geq(r, mk_int(0)));
      }
    }
    for (const auto& arr : call_outputs(e)) {
      Term v = mk_var(fresh_name(arr, st.used), st.env.at(arr).sort());
      post.args.push_back(v);
      st.env[arr] = v;
    }
    st.body.push_back(std::move(post));
  }

  void exec(Path st, Frames fr) {
    for (;;) {
      if (fr.empty()) {
        finish(st, nullptr);
        return;
      }
      if (fr.back().loop) {
        jump(st, loops_.at(fr.back().loop));
        return;
      }
      Frame& top = fr.back();
      if (top.idx == top.stmts->size()) {
        fr.pop_back();
        continue;
      }
      const Stmt& s = *(*top.stmts)[top.idx++];
      switch (s.kind) {
        case StmtKind::VarDecl:
          if (s.value && s.value->kind == ExprKind::Call) {
            call(st, *s.value, s.name, s.is_unsigned);
          } else if (s.value) {
            define(st, s.name, s.sort, term(*s.value, st.env));
          } else {
            define(st, s.name, s.sort, std::nullopt);
            if (s.is_unsigned) st.cons.push_back(mk_geq(st.env.at(s.name), mk_int(0)));
          }
          break;
        case StmtKind::ArrayDecl: {
          Term size = term(*s.value, st.env);
          define(st, s.name, s.sort, std::nullopt);
          st.cons.push_back(mk_eq(mk_len(st.env.at(s.name)), size));
          break;
        }
        case StmtKind::Assign:
          if (s.value->kind == ExprKind::Call)
            call(st, *s.value, s.name, false);
          else
            define(st, s.name, st.env.at(s.name).sort(), term(*s.value, st.env));
          break;
        case StmtKind::ArrayStore: {
          Term arr = st.env.at(s.name);
          Term upd = mk_write(arr, term(*s.index, st.env), term(*s.value, st.env));
          define(st, s.name, arr.sort(), upd);
          break;
        }
        case StmtKind::If: {
          Term cond = term(*s.value, st.env);
          Path a = st;
          a.cons.push_back(cond);
          Frames fa = fr;
          fa.push_back(Frame{&s.body, 0, nullptr});
          exec(std::move(a), std::move(fa));
          st.cons.push_back(mk_not(cond));
          if (s.has_else) fr.push_back(Frame{&s.else_body, 0, nullptr});
          break;
        }
        case StmtKind::While:
          reach_loop(st, &s, fr);
          return;
        case StmtKind::Assume:
          st.cons.push_back(term(*s.value, st.env));
          break;
        case StmtKind::Assert: {
          Term prop = term(*s.value, st.env);
          Path bad = st;
          bad.cons.push_back(mk_not(prop));
          emit(bad, std::nullopt);
          st.cons.push_back(prop);
          break;
        }
        case StmtKind::CallStmt:
          call(st, *s.value, "", false);
          break;
        case StmtKind::Return:
          finish(st, s.value.get());
          return;
        case StmtKind::Block:
          fr.push_back(Frame{&s.body, 0, nullptr});
          break;
      }
    }
  }
};

}  // namespace

ChcOutput gen_chc(const ProgramAst& ast) { return Generator(ast).run(); }

}  // namespace qice
