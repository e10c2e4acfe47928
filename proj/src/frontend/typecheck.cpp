#include <functional>
#include <map>
#include <set>

#include "qice/frontend/frontend.hpp"
#include "qice/logic/errors.hpp"
#include "qice/logic/term_io.hpp"

namespace qice {

namespace {

std::string at(SourcePos p) { return std::to_string(p.line) + ":" + std::to_string(p.column) + ": "; }

struct Scope {
  std::map<std::string, std::string> names;  // source -> unique
};

class Checker {
 public:
  explicit Checker(ProgramAst& ast) : ast_(ast) {}

  void run() {
    std::set<std::string> seen;
    for (const auto& p : ast_.procedures) {
      if (!seen.insert(p.name).second) throw SortError(at(p.pos) + "procedure '" + p.name + "' defined twice");
    }
    if (!ast_.find("main")) throw SortError("program has no main procedure");
    for (auto& p : ast_.procedures) procedure(p);
    ast_.typed = true;
  }

 private:
  ProgramAst& ast_;
  Procedure* proc_ = nullptr;
  std::vector<Scope> scopes_;
  std::set<std::string> used_;
  std::map<std::string, VarInfo> info_;  // unique -> info (current procedure)

  std::string declare(const std::string& source, Sort sort, bool is_unsigned, SourcePos pos) {
    if (scopes_.back().names.count(source))
      throw SortError(at(pos) + "'" + source + "' redeclared in the same scope");
    std::string unique = source;
    for (std::size_t i = 1; !used_.insert(unique).second; ++i) unique = source + "." + std::to_string(i);
    scopes_.back().names[source] = unique;
    VarInfo vi{unique, source, sort, is_unsigned, proc_->name};
    info_[unique] = vi;
    ast_.vars.push_back(vi);
    return unique;
  }

  const VarInfo* lookup(const std::string& source) const {
    for (auto it = scopes_.rbegin(); it != scopes_.rend(); ++it) {
      auto f = it->names.find(source);
      if (f != it->names.end()) return &info_.at(f->second);
    }
    return nullptr;
  }

  const VarInfo& resolve(const std::string& source, SourcePos pos) const {
    const VarInfo* v = lookup(source);
    if (!v) throw SortError(at(pos) + "undeclared variable '" + source + "'");
    return *v;
  }

  void procedure(Procedure& p) {
    proc_ = &p;
    scopes_.assign(1, Scope{});
    used_.clear();
    info_.clear();
    for (auto& d : p.params) d.name = declare(d.name, d.sort, d.is_unsigned, d.pos);
    block(p.body);
  }

  void block(std::vector<StmtPtr>& stmts) {
    scopes_.emplace_back();
    for (auto& s : stmts) statement(*s);
    scopes_.pop_back();
  }

  static void void_value(const Expr& e) {
    if (e.kind == ExprKind::Call && e.flag) throw SortError(at(e.pos) + "'" + e.name + "' returns no value");
  }

  static std::string sort_name(Sort s) { return s.to_string(); }

  void require(const Expr& e, Sort s, const std::string& what) {
    if (e.sort != s)
      throw SortError(at(e.pos) + what + " must be " + sort_name(s) + ", found " + sort_name(e.sort));
  }

  void statement(Stmt& s) {
    switch (s.kind) {
      case StmtKind::VarDecl:
        if (s.value) {
          expr(*s.value, true);
          void_value(*s.value);
          require(*s.value, s.sort, "initializer");
        }
        s.name = declare(s.name, s.sort, s.is_unsigned, s.pos);
        return;
      case StmtKind::ArrayDecl:
        expr(*s.value, false);
        require(*s.value, Sort::integer(), "array size");
        s.name = declare(s.name, s.sort, s.is_unsigned, s.pos);
        return;
      case StmtKind::Assign: {
        const VarInfo& v = resolve(s.name, s.pos);
        if (v.sort.is_array()) throw UnsupportedError(at(s.pos) + "array assignment");
        expr(*s.value, true);
        void_value(*s.value);
        require(*s.value, v.sort, "assigned value");
        s.name = v.unique;
        return;
      }
      case StmtKind::ArrayStore: {
        const VarInfo& v = resolve(s.name, s.pos);
        if (!v.sort.is_array()) throw SortError(at(s.pos) + "'" + s.name + "' is not an array");
        expr(*s.index, false);
        require(*s.index, Sort::integer(), "array index");
        expr(*s.value, false);
        require(*s.value, v.sort.element(), "stored value");
        s.name = v.unique;
        return;
      }
      case StmtKind::If:
        expr(*s.value, false);
        require(*s.value, Sort::boolean(), "condition");
        block(s.body);
        if (s.has_else) block(s.else_body);
        return;
      case StmtKind::While:
        expr(*s.value, false);
        require(*s.value, Sort::boolean(), "loop condition");
        block(s.body);
        return;
      case StmtKind::Assume:
      case StmtKind::Assert:
        expr(*s.value, false);
        require(*s.value, Sort::boolean(), "property");
        return;
      case StmtKind::CallStmt:
        expr(*s.value, true);
        return;
      case StmtKind::Return:
        if (s.value) {
          if (!proc_->result) throw SortError(at(s.pos) + "void procedure returns a value");
          expr(*s.value, false);
          require(*s.value, *proc_->result, "returned value");
        } else if (proc_->result) {
          throw SortError(at(s.pos) + "missing return value");
        }
        return;
      case StmtKind::Block:
        block(s.body);
        return;
    }
  }

  static bool constant(const Expr& e) {
    if (e.kind == ExprKind::IntLit) return true;
    if (e.kind == ExprKind::Unary && e.op == "-") return constant(*e.args[0]);
    if (e.kind == ExprKind::Binary && (e.op == "+" || e.op == "-" || e.op == "*"))
      return constant(*e.args[0]) && constant(*e.args[1]);
    return false;
  }

  // First array read whose index mentions `k`.
  static const Expr* indexing(const Expr& e, const std::string& k) {
    if (e.kind == ExprKind::Read) {
      std::function<bool(const Expr&)> mentions = [&](const Expr& x) {
        if (x.kind == ExprKind::Var && x.name == k) return true;
        for (const auto& a : x.args)
          if (mentions(*a)) return true;
        return false;
      };
      if (mentions(*e.args[0])) return &e;
    }
    for (const auto& a : e.args)
      if (const Expr* r = indexing(*a, k)) return r;
    return nullptr;
  }

  void expr(Expr& e, bool call_ok) {
    switch (e.kind) {
      case ExprKind::IntLit:
        e.sort = Sort::integer();
        return;
      case ExprKind::BoolLit:
        e.sort = Sort::boolean();
        return;
      case ExprKind::Var: {
        const VarInfo& v = resolve(e.name, e.pos);
        e.name = v.unique;
        e.sort = v.sort;
        return;
      }
      case ExprKind::Read: {
        const VarInfo& v = resolve(e.name, e.pos);
        if (!v.sort.is_array()) throw SortError(at(e.pos) + "'" + e.name + "' is not an array");
        expr(*e.args[0], false);
        require(*e.args[0], Sort::integer(), "array index");
        e.name = v.unique;
        e.sort = v.sort.element();
        return;
      }
      case ExprKind::Unary:
        expr(*e.args[0], false);
        if (e.op == "-") {
          require(*e.args[0], Sort::integer(), "operand of '-'");
          e.sort = Sort::integer();
        } else {
          require(*e.args[0], Sort::boolean(), "operand of '!'");
          e.sort = Sort::boolean();
        }
        return;
      case ExprKind::Binary: {
        expr(*e.args[0], false);
        expr(*e.args[1], false);
        const std::string& op = e.op;
        if (op == "+" || op == "-" || op == "*") {
          require(*e.args[0], Sort::integer(), "operand of '" + op + "'");
          require(*e.args[1], Sort::integer(), "operand of '" + op + "'");
          if (op == "*" && !constant(*e.args[0]) && !constant(*e.args[1]))
            throw UnsupportedError(at(e.pos) + "nonlinear arithmetic is not supported");
          e.sort = Sort::integer();
        } else if (op == "<" || op == "<=" || op == ">" || op == ">=") {
          require(*e.args[0], Sort::integer(), "operand of '" + op + "'");
          require(*e.args[1], Sort::integer(), "operand of '" + op + "'");
          e.sort = Sort::boolean();
        } else if (op == "==" || op == "!=") {
          if (e.args[0]->sort.is_array() || e.args[0]->sort != e.args[1]->sort)
            throw SortError(at(e.pos) + "operands of '" + op + "' have sorts " + sort_name(e.args[0]->sort) +
                            " and " + sort_name(e.args[1]->sort));
          e.sort = Sort::boolean();
        } else {
          require(*e.args[0], Sort::boolean(), "operand of '" + op + "'");
          require(*e.args[1], Sort::boolean(), "operand of '" + op + "'");
          e.sort = Sort::boolean();
        }
        return;
      }
      case ExprKind::Call: {
        if (!call_ok)
          throw UnsupportedError(at(e.pos) + "calls are only supported as statements or right-hand sides");
        const Procedure* callee = ast_.find(e.name);
        if (!callee) throw SortError(at(e.pos) + "unknown procedure '" + e.name + "'");
        if (callee->name == "main") throw UnsupportedError(at(e.pos) + "call to main");
        if (callee->params.size() != e.args.size())
          throw SortError(at(e.pos) + "'" + e.name + "' expects " + std::to_string(callee->params.size()) +
                          " arguments");
        for (std::size_t i = 0; i < e.args.size(); ++i) {
          Expr& a = *e.args[i];
          expr(a, false);
          if (a.sort != callee->params[i].sort)
            throw SortError(at(a.pos) + "argument " + std::to_string(i + 1) + " of '" + e.name + "' must be " +
                            sort_name(callee->params[i].sort));
          if (a.sort.is_array() && a.kind != ExprKind::Var)
            throw SortError(at(a.pos) + "array argument must be a variable");
        }
        e.sort = callee->result ? *callee->result : Sort::boolean();
        e.flag = !callee->result;  // void call
        return;
      }
      case ExprKind::Forall: {
        scopes_.emplace_back();
        std::vector<std::string> sources = e.bound;
        for (auto& b : e.bound) b = declare(b, Sort::integer(), false, e.pos);
        expr(*e.args[0], false);
        require(*e.args[0], Sort::boolean(), "quantified body");
        scopes_.pop_back();
        e.bound_arrays.clear();
        for (std::size_t i = 0; i < e.bound.size(); ++i) {
          const Expr* r = indexing(*e.args[0], e.bound[i]);
          if (!r) throw SortError(at(e.pos) + "quantified variable '" + sources[i] + "' does not index an array");
          e.bound_arrays.push_back(r->name);
        }
        e.sort = Sort::boolean();
        return;
      }
      case ExprKind::Embedded: {
        SortEnv env;
        Substitution sub;
        for (auto it = scopes_.begin(); it != scopes_.end(); ++it)
          for (const auto& [src, unique] : it->names) {
            env[src] = info_.at(unique).sort;
            sub[src] = mk_var(unique, info_.at(unique).sort);
          }
        Term t;
        try {
          if (e.text.rfind("(qprop", 0) == 0)
            t = parse_property(e.text, env).to_term();
          else
            t = parse_term(e.text, env);
        } catch (const ParseError& err) {
          throw ParseError(err.what(), e.pos.line, e.pos.column);
        }
        e.term = substitute(t, sub);
        e.sort = e.term.sort();
        return;
      }
    }
  }
};

}  // namespace

void typecheck(ProgramAst& ast) {
  ast.vars.clear();
  Checker(ast).run();
}

}  // namespace qice
