#include <numeric>

#include "qice/chc/system.hpp"

namespace qice {

namespace {

class UnionFind {
 public:
  int add() {
    parent_.push_back(static_cast<int>(parent_.size()));
    return parent_.back();
  }
  int find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(int a, int b) {
    if (a < 0 || b < 0) return;
    parent_[find(a)] = find(b);
  }

 private:
  std::vector<int> parent_;
};

class Inference {
 public:
  Inference() : sys_(nullptr) {
    idx_ = uf_.add();
    val_ = uf_.add();
  }

  explicit Inference(const ChcSystem& sys) : sys_(&sys) {
    idx_ = uf_.add();
    val_ = uf_.add();
    for (const auto& p : sys.predicates) {
      auto& slots = params_[p.name];
      for (const auto& [n, s] : p.params) slots.push_back(s.is_int() ? uf_.add() : -1);
    }
  }

  std::map<std::string, std::vector<IntClass>> run() {
    for (std::size_t i = 0; i < sys_->clauses.size(); ++i) {
      const Clause& c = sys_->clauses[i];
      vars_.clear();
      for (const auto& b : c.body) app(b);
      if (c.head) app(*c.head);
      node(c.constraint);
    }
    const bool collapsed = uf_.find(idx_) == uf_.find(val_);
    std::map<std::string, std::vector<IntClass>> out;
    for (const auto& [pred, slots] : params_) {
      auto& cls = out[pred];
      for (int s : slots) {
        IntClass k = IntClass::Any;
        if (s >= 0 && !collapsed) {
          if (uf_.find(s) == uf_.find(idx_)) k = IntClass::Index;
          if (uf_.find(s) == uf_.find(val_)) k = IntClass::Value;
        }
        cls.push_back(k);
      }
    }
    return out;
  }

  // Terms over one shared variable namespace.
  std::map<std::string, IntClass> run(const std::vector<Term>& terms) {
    for (const auto& t : terms) node(t);
    const bool collapsed = uf_.find(idx_) == uf_.find(val_);
    std::map<std::string, IntClass> out;
    for (const auto& [name, n] : vars_) {
      IntClass k = IntClass::Any;
      if (!collapsed && uf_.find(n) == uf_.find(idx_)) k = IntClass::Index;
      if (!collapsed && uf_.find(n) == uf_.find(val_)) k = IntClass::Value;
      out[name] = k;
    }
    return out;
  }

 private:
  const ChcSystem* sys_;
  UnionFind uf_;
  int idx_, val_;
  std::map<std::string, std::vector<int>> params_;
  std::map<std::string, int> vars_;  // clause variables (and bound names) of the current clause

  void app(const Application& a) {
    const auto& slots = params_.at(a.pred);
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      int n = node(a.args[i]);
      if (slots[i] >= 0) uf_.unite(n, slots[i]);
    }
  }

  // Class node of an integer term (-1 for constants and non-integers).
  int node(const Term& t) {
    switch (t.op()) {
      case Op::IntConst:
      case Op::BoolConst:
        return -1;
      case Op::Var: {
        if (!t.sort().is_int()) return -1;
        auto it = vars_.find(t.name());
        if (it == vars_.end()) it = vars_.emplace(t.name(), uf_.add()).first;
        return it->second;
      }
      case Op::Add:
      case Op::Leq:
      case Op::Eq: {
        int a = node(t.arg(0)), b = node(t.arg(1));
        if (t.arg(0).sort().is_int()) {
          if (a < 0) return b;
          uf_.unite(b, a);
          return t.is(Op::Add) ? a : -1;
        }
        return -1;
      }
      case Op::Mul:
        return node(t.arg(0));
      case Op::Ite: {
        node(t.arg(0));
        int a = node(t.arg(1)), b = node(t.arg(2));
        if (!t.sort().is_int()) return -1;
        if (a < 0) return b;
        uf_.unite(b, a);
        return a;
      }
      case Op::Read:
        node(t.arg(0));
        uf_.unite(node(t.arg(1)), idx_);
        return t.sort().is_int() ? val_ : -1;
      case Op::Write:
        node(t.arg(0));
        uf_.unite(node(t.arg(1)), idx_);
        if (t.arg(2).sort().is_int()) uf_.unite(node(t.arg(2)), val_);
        return -1;
      case Op::Len:
        node(t.arg(0));
        return idx_;
      case Op::Forall: {
        for (std::size_t i = 0; i + 1 < t.args().size(); ++i) node(t.arg(i));
        std::map<std::string, int> saved;
        for (const auto& b : t.bound()) {
          if (vars_.count(b)) saved[b] = vars_[b];
          vars_[b] = uf_.add();
          uf_.unite(vars_[b], idx_);
        }
        node(t.body());
        for (const auto& b : t.bound()) {
          if (saved.count(b))
            vars_[b] = saved[b];
          else
            vars_.erase(b);
        }
        return -1;
      }
      default:
        for (const auto& a : t.args()) node(a);
        return -1;
    }
  }
};

}  // namespace

std::map<std::string, std::vector<IntClass>> infer_classes(const ChcSystem& sys) { return Inference(sys).run(); }

std::map<std::string, IntClass> infer_var_classes(const std::vector<Term>& terms) { return Inference().run(terms); }

}  // namespace qice
