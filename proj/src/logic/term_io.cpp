#include "qice/logic/term_io.hpp"

#include <cctype>
#include <optional>

#include "qice/logic/errors.hpp"

namespace qice {

bool parse_numeral(std::string_view s, BigInt& out) {
  bool neg = false;
  if (!s.empty() && s[0] == '-') {
    neg = true;
    s.remove_prefix(1);
  }
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  out = BigInt(std::string(s));
  if (neg) out = -out;
  return true;
}

std::string numeral_to_sexpr(const BigInt& v) {
  if (v < 0) return "(- " + BigInt(-v).str() + ")";
  return v.str();
}

namespace {

void print(const Term& t, std::string& out) {
  auto list = [&](const char* head) {
    out += '(';
    out += head;
    for (const auto& a : t.args()) {
      out += ' ';
      print(a, out);
    }
    out += ')';
  };
  switch (t.op()) {
    case Op::IntConst:
      out += numeral_to_sexpr(t.int_value());
      return;
    case Op::BoolConst:
      out += t.bool_value() ? "true" : "false";
      return;
    case Op::Var:
      out += t.name();
      return;
    case Op::Add:
      return list("+");
    case Op::Mul:
      out += "(* " + numeral_to_sexpr(t.int_value()) + " ";
      print(t.arg(0), out);
      out += ')';
      return;
    case Op::Leq:
      return list("<=");
    case Op::Eq:
      return list("=");
    case Op::Not:
      return list("not");
    case Op::And:
      return list("and");
    case Op::Or:
      return list("or");
    case Op::Ite:
      return list("ite");
    case Op::Read:
      return list("read");
    case Op::Write:
      return list("write");
    case Op::Len:
      return list("len");
    case Op::Forall:
      out += "(forall-idx (";
      for (std::size_t i = 0; i < t.bound().size(); ++i) {
        if (i) out += ' ';
        out += "(" + t.bound()[i] + " ";
        print(t.arg(i), out);
        out += ')';
      }
      out += ") ";
      print(t.body(), out);
      out += ')';
      return;
  }
}

class TermParser {
 public:
  explicit TermParser(const SortEnv& vars) : vars_(vars) {}

  Term parse(const SExpr& e) {
    try {
      return parse_inner(e);
    } catch (const SortError& err) {
      throw SortError(std::to_string(e.line) + ":" + std::to_string(e.column) + ": " + err.what());
    }
  }

 private:
  Term parse_inner(const SExpr& e) {
    if (e.is_atom()) return atom(e);
    if (e.items.empty()) parse_fail(e, "empty list is not a term");
    const std::string h = e.head();
    if (h.empty()) parse_fail(e, "expected an operator symbol");
    const std::size_t n = e.size() - 1;
    auto arity = [&](std::size_t k) {
      if (n != k) parse_fail(e, "'" + h + "' expects " + std::to_string(k) + " operands, got " + std::to_string(n));
    };
    auto at_least = [&](std::size_t k) {
      if (n < k) parse_fail(e, "'" + h + "' expects at least " + std::to_string(k) + " operands");
    };
    auto sub = [&](std::size_t i) { return parse_inner(e[i]); };
    auto all = [&]() {
      std::vector<Term> ts;
      for (std::size_t i = 1; i < e.size(); ++i) ts.push_back(sub(i));
      return ts;
    };

    if (h == "+") {
      at_least(1);
      return mk_sum(all());
    }
    if (h == "-") {
      at_least(1);
      if (n == 1) {
        BigInt v;
        if (e[1].is_atom() && parse_numeral(e[1].text, v)) return mk_int(-v);
        return mk_neg(sub(1));
      }
      Term acc = sub(1);
      for (std::size_t i = 2; i < e.size(); ++i) acc = mk_sub(acc, sub(i));
      return acc;
    }
    if (h == "*") {
      arity(2);
      BigInt c;
      if (constant(e[1], c)) return mk_mul(c, sub(2));
      if (constant(e[2], c)) return mk_mul(c, sub(1));
      throw UnsupportedError(pos(e) + "nonlinear multiplication is not supported");
    }
    if (h == "div" || h == "mod" || h == "/" || h == "%" || h == "rem")
      throw UnsupportedError(pos(e) + "division and modulo are not supported");
    if (h == "<=" || h == "<" || h == ">=" || h == ">") {
      at_least(2);
      std::vector<Term> ts = all();
      std::vector<Term> conj;
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
        if (h == "<=") conj.push_back(mk_leq(ts[i], ts[i + 1]));
        if (h == "<") conj.push_back(mk_lt(ts[i], ts[i + 1]));
        if (h == ">=") conj.push_back(mk_geq(ts[i], ts[i + 1]));
        if (h == ">") conj.push_back(mk_gt(ts[i], ts[i + 1]));
      }
      return mk_and(std::move(conj));
    }
    if (h == "=") {
      at_least(2);
      std::vector<Term> ts = all();
      std::vector<Term> conj;
      for (std::size_t i = 0; i + 1 < ts.size(); ++i) conj.push_back(mk_eq(ts[i], ts[i + 1]));
      return mk_and(std::move(conj));
    }
    if (h == "distinct") {
      arity(2);
      return mk_neq(sub(1), sub(2));
    }
    if (h == "not") {
      arity(1);
      return mk_not(sub(1));
    }
    if (h == "and") return mk_and(all());
    if (h == "or") return mk_or(all());
    if (h == "=>") {
      at_least(2);
      std::vector<Term> ts = all();
      Term acc = ts.back();
      for (std::size_t i = ts.size() - 1; i-- > 0;) acc = mk_implies(ts[i], acc);
      return acc;
    }
    if (h == "ite") {
      arity(3);
      return mk_ite(sub(1), sub(2), sub(3));
    }
    if (h == "read" || h == "select") {
      arity(2);
      return mk_read(sub(1), sub(2));
    }
    if (h == "write" || h == "store") {
      arity(3);
      return mk_write(sub(1), sub(2), sub(3));
    }
    if (h == "len") {
      arity(1);
      return mk_len(sub(1));
    }
    if (h == "forall-idx") {
      arity(2);
      const SExpr& binders = e[1];
      if (!binders.is_list()) parse_fail(binders, "expected a binder list");
      std::vector<std::string> names;
      std::vector<Term> arrays;
      for (const auto& b : binders.items) {
        if (!b.is_list() || b.size() != 2 || !b[0].is_atom()) parse_fail(b, "expected (name array-term)");
        arrays.push_back(parse_inner(b[1]));
        names.push_back(b[0].text);
      }
      std::vector<std::optional<Sort>> saved;
      for (const auto& nm : names) {
        auto it = vars_.find(nm);
        saved.push_back(it == vars_.end() ? std::nullopt : std::optional<Sort>(it->second));
        vars_[nm] = Sort::integer();
      }
      Term body = parse_inner(e[2]);
      for (std::size_t i = names.size(); i-- > 0;) {
        if (saved[i])
          vars_[names[i]] = *saved[i];
        else
          vars_.erase(names[i]);
      }
      return mk_forall(std::move(names), std::move(arrays), body);
    }
    parse_fail(e, "unknown operator '" + h + "'");
  }

  bool constant(const SExpr& e, BigInt& out) {
    if (e.is_atom()) return parse_numeral(e.text, out);
    if (e.head() == "-" && e.size() == 2 && e[1].is_atom() && parse_numeral(e[1].text, out)) {
      out = -out;
      return true;
    }
    return false;
  }

  Term atom(const SExpr& e) {
    BigInt v;
    if (parse_numeral(e.text, v)) return mk_int(v);
    if (e.text == "true") return mk_true();
    if (e.text == "false") return mk_false();
    auto it = vars_.find(e.text);
    if (it == vars_.end()) parse_fail(e, "undeclared variable '" + e.text + "'");
    return mk_var(e.text, it->second);
  }

  static std::string pos(const SExpr& e) { return std::to_string(e.line) + ":" + std::to_string(e.column) + ": "; }

  SortEnv vars_;
};

}  // namespace

std::string term_to_string(const Term& t) {
  if (t.is_null()) return "<null>";
  std::string out;
  print(t, out);
  return out;
}

std::string property_to_string(const QuantifiedProperty& p) {
  std::string out = "(qprop " + term_to_string(p.psi) + " (";
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    if (i) out += ' ';
    out += "(" + term_to_string(p.blocks[i].array);
    for (const auto& k : p.blocks[i].vars) out += " " + k;
    out += ")";
  }
  out += ") " + term_to_string(p.guard) + " " + term_to_string(p.matrix) + ")";
  return out;
}

Sort parse_sort(const SExpr& e) {
  if (e.is_symbol("Int")) return Sort::integer();
  if (e.is_symbol("Bool")) return Sort::boolean();
  if (e.is_list() && e.head() == "Array") {
    // (Array Int) or the SMT-LIB style (Array Int Int)
    if (e.size() == 2 || (e.size() == 3 && e[1].is_symbol("Int"))) {
      Sort el = parse_sort(e[e.size() - 1]);
      if (el.is_array()) parse_fail(e, "nested arrays are not supported");
      return Sort::array(el);
    }
  }
  parse_fail(e, "unknown sort '" + e.to_string() + "'");
}

Term parse_term(const SExpr& e, const SortEnv& vars) { return TermParser(vars).parse(e); }

Term parse_term(std::string_view text, const SortEnv& vars) { return parse_term(parse_sexpr(text), vars); }

QuantifiedProperty parse_property(const SExpr& e, const SortEnv& vars) {
  if (e.head() != "qprop") return QuantifiedProperty::quantifier_free(parse_term(e, vars));
  if (e.size() != 5) parse_fail(e, "qprop expects PSI BLOCKS GUARD MATRIX");
  QuantifiedProperty p;
  p.psi = parse_term(e[1], vars);
  SortEnv inner = vars;
  if (!e[2].is_list()) parse_fail(e[2], "expected a block list");
  for (const auto& b : e[2].items) {
    if (!b.is_list() || b.size() < 2 || !b[0].is_atom()) parse_fail(b, "expected (array k...)");
    auto it = vars.find(b[0].text);
    if (it == vars.end() || !it->second.is_array()) parse_fail(b[0], "'" + b[0].text + "' is not an array variable");
    QuantBlock blk{mk_var(b[0].text, it->second), {}};
    for (std::size_t i = 1; i < b.size(); ++i) {
      if (!b[i].is_atom()) parse_fail(b[i], "expected a quantifier variable name");
      blk.vars.push_back(b[i].text);
      inner[b[i].text] = Sort::integer();
    }
    p.blocks.push_back(std::move(blk));
  }
  p.guard = parse_term(e[3], inner);
  p.matrix = parse_term(e[4], inner);
  return p;
}

QuantifiedProperty parse_property(std::string_view text, const SortEnv& vars) {
  return parse_property(parse_sexpr(text), vars);
}

}  // namespace qice
