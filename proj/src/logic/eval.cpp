#include "qice/logic/eval.hpp"

#include <utility>

#include "qice/logic/errors.hpp"

namespace qice {
namespace {

class Evaluator {
 public:
  explicit Evaluator(const Valuation& env) : env_(env) {}

  Value run(const Term& t) {
    switch (t.op()) {
      case Op::IntConst:
        return Value::of_int(t.int_value());
      case Op::BoolConst:
        return Value::of_bool(t.bool_value());
      case Op::Var:
        return lookup(t);
      case Op::Add:
        return Value::of_int(run(t.arg(0)).as_int() + run(t.arg(1)).as_int());
      case Op::Mul:
        return Value::of_int(t.int_value() * run(t.arg(0)).as_int());
      case Op::Leq:
        return Value::of_bool(run(t.arg(0)).as_int() <= run(t.arg(1)).as_int());
      case Op::Eq:
        return Value::of_bool(run(t.arg(0)) == run(t.arg(1)));
      case Op::Not:
        return Value::of_bool(!run(t.arg(0)).as_bool());
      case Op::And:
        for (const auto& a : t.args())
          if (!run(a).as_bool()) return Value::of_bool(false);
        return Value::of_bool(true);
      case Op::Or:
        for (const auto& a : t.args())
          if (run(a).as_bool()) return Value::of_bool(true);
        return Value::of_bool(false);
      case Op::Ite:
        return run(t.arg(0)).as_bool() ? run(t.arg(1)) : run(t.arg(2));
      case Op::Read: {
        Value arr = run(t.arg(0));
        return arr.at(run(t.arg(1)).as_int());
      }
      case Op::Write: {
        Value arr = run(t.arg(0));
        BigInt idx = run(t.arg(1)).as_int();
        Value v = run(t.arg(2));
        if (idx < 0 || idx >= arr.size()) return arr;
        std::vector<BigInt> es = arr.elems();
        es[static_cast<std::size_t>(idx)] = v.sort().is_int() ? v.as_int() : BigInt(v.as_bool() ? 1 : 0);
        return Value::of_array(arr.sort().element(), std::move(es));
      }
      case Op::Len:
        return Value::of_int(BigInt(run(t.arg(0)).size()));
      case Op::Forall:
        return Value::of_bool(forall(t));
    }
    throw EvalError("unknown operator");
  }

 private:
  Value lookup(const Term& v) {
    for (auto it = locals_.rbegin(); it != locals_.rend(); ++it)
      if (*it->first == v.name()) return Value::of_int(it->second);
    auto it = env_.find(v.name());
    if (it == env_.end()) throw EvalError("unbound variable " + v.name());
    if (it->second.sort() != v.sort())
      throw SortError("variable " + v.name() + " has sort " + v.sort().to_string() + " but is assigned " +
                      it->second.to_string());
    return it->second;
  }

  bool forall(const Term& t) {
    const std::size_t nb = t.bound().size();
    std::vector<std::size_t> sizes;
    for (std::size_t i = 0; i < nb; ++i) sizes.push_back(run(t.arg(i)).size());
    for (auto s : sizes)
      if (s == 0) return true;
    const std::size_t base = locals_.size();
    for (std::size_t i = 0; i < nb; ++i) locals_.emplace_back(&t.bound()[i], 0);
    bool result = true;
    while (true) {
      if (!run(t.body()).as_bool()) {
        result = false;
        break;
      }
      std::size_t i = 0;
      for (; i < nb; ++i) {
        auto& slot = locals_[base + i].second;
        slot += 1;
        if (slot < sizes[i]) break;
        slot = 0;
      }
      if (i == nb) break;
    }
    locals_.resize(base);
    return result;
  }

  const Valuation& env_;
  std::vector<std::pair<const std::string*, BigInt>> locals_;
};

}  // namespace

Value eval(const Term& t, const Valuation& env) { return Evaluator(env).run(t); }
bool eval_bool(const Term& t, const Valuation& env) { return eval(t, env).as_bool(); }
BigInt eval_int(const Term& t, const Valuation& env) { return eval(t, env).as_int(); }

}  // namespace qice
