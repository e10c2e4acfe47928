#include "qice/teacher/smtlib.hpp"

#include <set>
#include <sstream>

#include "qice/logic/errors.hpp"
#include "qice/logic/term_io.hpp"

namespace qice {

std::string smt_symbol(const std::string& name) {
  static const std::string extra = "~!@$%^&*_-+=<>.?/";
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
  for (char c : name) simple = simple && (std::isalnum(static_cast<unsigned char>(c)) || extra.find(c) != std::string::npos);
  return simple ? name : "|" + name + "|";
}

std::string smt_sort(Sort s) {
  if (s.is_int()) return "Int";
  if (s.is_bool()) return "Bool";
  return "(Array Int " + smt_sort(s.element()) + ")";
}

namespace {

void collect_names(const Term& t, std::set<std::string>& out) {
  if (t.is(Op::Var)) out.insert(t.name());
  if (t.is(Op::Forall))
    for (const auto& b : t.bound()) out.insert(b);
  for (const auto& a : t.args()) collect_names(a, out);
}

std::string smt_int(const BigInt& v) { return v < 0 ? "(- " + BigInt(-v).str() + ")" : v.str(); }

class Encoder {
 public:
  Encoder(Encoded& out, std::set<std::string>& used) : out_(out), used_(used) {}

  // array variable -> (u, l) names
  const Encoded::ArrayVar& array(const std::string& name, Sort sort) {
    auto it = out_.arrays.find(name);
    if (it != out_.arrays.end()) return it->second;
    Encoded::ArrayVar v{fresh_name("u_" + name, used_), fresh_name("l_" + name, used_), sort};
    out_.declarations.push_back("(declare-const " + smt_symbol(v.u) + " " + smt_sort(Sort::array(sort.element())) + ")");
    out_.declarations.push_back("(declare-const " + smt_symbol(v.l) + " Int)");
    out_.side.push_back("(>= " + smt_symbol(v.l) + " 0)");
    return out_.arrays.emplace(name, v).first->second;
  }

  // (unbounded array expression, length expression)
  std::pair<std::string, std::string> arr(const Term& t) {
    switch (t.op()) {
      case Op::Var: {
        const auto& v = array(t.name(), t.sort());
        return {smt_symbol(v.u), smt_symbol(v.l)};
      }
      case Op::Write: {
        auto [u, l] = arr(t.arg(0));
        const std::string i = term(t.arg(1));
        return {"(ite " + in_range(i, l) + " (store " + u + " " + i + " " + term(t.arg(2)) + ") " + u + ")", l};
      }
      case Op::Ite: {
        auto [u1, l1] = arr(t.arg(1));
        auto [u2, l2] = arr(t.arg(2));
        const std::string c = term(t.arg(0));
        return {"(ite " + c + " " + u1 + " " + u2 + ")", "(ite " + c + " " + l1 + " " + l2 + ")"};
      }
      default:
        throw UnsupportedError("array term cannot be encoded: " + t.to_string());
    }
  }

  static std::string in_range(const std::string& i, const std::string& l) {
    return "(and (<= 0 " + i + ") (< " + i + " " + l + "))";
  }

  std::string term(const Term& t) {
    switch (t.op()) {
      case Op::IntConst:
        return smt_int(t.int_value());
      case Op::BoolConst:
        return t.bool_value() ? "true" : "false";
      case Op::Var:
        if (t.sort().is_array()) throw UnsupportedError("array variable in scalar position: " + t.name());
        return smt_symbol(t.name());
      case Op::Add:
        return nary("+", t);
      case Op::Mul:
        return "(* " + smt_int(t.int_value()) + " " + term(t.arg(0)) + ")";
      case Op::Leq:
        return "(<= " + term(t.arg(0)) + " " + term(t.arg(1)) + ")";
      case Op::Eq:
        if (t.arg(0).sort().is_array()) return array_eq(t.arg(0), t.arg(1));
        return "(= " + term(t.arg(0)) + " " + term(t.arg(1)) + ")";
      case Op::Not:
        return "(not " + term(t.arg(0)) + ")";
      case Op::And:
        return nary("and", t);
      case Op::Or:
        return nary("or", t);
      case Op::Ite:
        if (t.sort().is_array()) throw UnsupportedError("array ite in scalar position: " + t.to_string());
        return "(ite " + term(t.arg(0)) + " " + term(t.arg(1)) + " " + term(t.arg(2)) + ")";
      case Op::Read: {
        auto [u, l] = arr(t.arg(0));
        const std::string i = term(t.arg(1));
        const std::string dflt = t.sort().is_bool() ? "false" : "0";
        return "(ite " + in_range(i, l) + " (select " + u + " " + i + ") " + dflt + ")";
      }
      case Op::Len:
        return arr(t.arg(0)).second;
      case Op::Forall: {
        std::string binders, guard;
        for (std::size_t j = 0; j < t.bound().size(); ++j) {
          const std::string k = smt_symbol(t.bound()[j]);
          binders += "(" + k + " Int)";
          guard += " " + in_range(k, arr(t.arg(j)).second);
        }
        return "(forall (" + binders + ") (=> (and" + guard + ") " + term(t.body()) + "))";
      }
      case Op::Write:
        break;
    }
    throw UnsupportedError("term cannot be encoded: " + t.to_string());
  }

 private:
  std::string nary(const char* op, const Term& t) {
    std::string s = std::string("(") + op;
    for (const auto& a : t.args()) s += " " + term(a);
    return s + ")";
  }

  std::string array_eq(const Term& a, const Term& b) {
    auto [u1, l1] = arr(a);
    auto [u2, l2] = arr(b);
    const std::string j = smt_symbol(fresh_name("j", used_));
    return "(and (= " + l1 + " " + l2 + ") (forall ((" + j + " Int)) (=> " + in_range(j, l1) + " (= (select " + u1 +
           " " + j + ") (select " + u2 + " " + j + ")))))";
  }

  Encoded& out_;
  std::set<std::string>& used_;
};

}  // namespace

Encoded encode(const Term& f, const SortEnv& env) {
  Encoded out;
  std::set<std::string> used;
  collect_names(f, used);
  for (const auto& [name, _] : env) used.insert(name);
  Encoder enc(out, used);
  for (const auto& [name, sort] : env) {
    if (sort.is_array())
      enc.array(name, sort);
    else
      out.declarations.push_back("(declare-const " + smt_symbol(name) + " " + smt_sort(sort) + ")");
  }
  out.formula = enc.term(f);
  return out;
}

std::string export_horn(const ChcSystem& sys) {
  std::ostringstream os;
  os << "(set-logic HORN)\n";
  for (const auto& p : sys.predicates) {
    os << "(declare-fun " << smt_symbol(p.name) << " (";
    for (std::size_t i = 0; i < p.params.size(); ++i) {
      const Sort s = p.params[i].second;
      os << (i ? " " : "") << smt_sort(s);
      if (s.is_array()) os << " Int";
    }
    os << ") Bool)\n";
  }
  for (const auto& c : sys.clauses) {
    Encoded e;
    std::set<std::string> used;
    for (const auto& [name, _] : c.vars) used.insert(name);
    for (const auto& app : c.body)
      for (const auto& a : app.args) collect_names(a, used);
    if (c.head)
      for (const auto& a : c.head->args) collect_names(a, used);
    collect_names(c.constraint, used);
    Encoder enc(e, used);
    std::string binders;
    for (const auto& [name, sort] : c.vars) {
      if (sort.is_array()) {
        const auto& v = enc.array(name, sort);
        binders += "(" + smt_symbol(v.u) + " " + smt_sort(sort) + ")(" + smt_symbol(v.l) + " Int)";
      } else {
        binders += "(" + smt_symbol(name) + " " + smt_sort(sort) + ")";
      }
    }
    auto app = [&](const Application& a) {
      std::string s = "(" + smt_symbol(a.pred);
      for (const auto& arg : a.args) {
        if (arg.sort().is_array()) {
          auto [u, l] = enc.arr(arg);
          s += " " + u + " " + l;
        } else {
          s += " " + enc.term(arg);
        }
      }
      return a.args.empty() ? smt_symbol(a.pred) : s + ")";
    };
    std::vector<std::string> body = e.side;
    for (const auto& b : c.body) body.push_back(app(b));
    body.push_back(enc.term(c.constraint));
    const std::string head = c.head ? app(*c.head) : "false";
    std::string impl = "(=> (and";
    for (const auto& b : body) impl += " " + b;
    impl += ") " + head + ")";
    os << "(assert " << (binders.empty() ? impl : "(forall (" + binders + ") " + impl + ")") << ")\n";
  }
  os << "(check-sat)\n";
  return os.str();
}

}  // namespace qice
