#include "qice/chc/chc_io.hpp"

#include <fstream>
#include <sstream>

#include "qice/logic/errors.hpp"
#include "qice/logic/term_io.hpp"

namespace qice {
namespace {

class Loader {
 public:
  ChcSystem load(std::string_view text) {
    for (const auto& item : parse_sexprs(text)) {
      const std::string h = item.head();
      if (h == "declare-pred") {
        declare(item);
      } else if (h == "clause") {
        clause(item);
      } else {
        parse_fail(item, "expected declare-pred or clause");
      }
    }
    sys_.validate();
    return std::move(sys_);
  }

 private:
  void declare(const SExpr& e) {
    if (e.size() != 3 || !e[1].is_atom() || !e[2].is_list()) parse_fail(e, "expected (declare-pred NAME (PARAMS))");
    PredicateSig sig{e[1].text, {}};
    if (sys_.find(sig.name)) parse_fail(e[1], "predicate " + sig.name + " declared twice");
    std::size_t idx = 0;
    for (const auto& p : e[2].items) {
      if (p.is_list() && p.size() == 2 && p[0].is_atom() && p.head() != "Array") {
        sig.params.emplace_back(p[0].text, parse_sort(p[1]));
      } else {
        sig.params.emplace_back("x" + std::to_string(idx), parse_sort(p));
      }
      ++idx;
    }
    sys_.predicates.push_back(std::move(sig));
  }

  void clause(const SExpr& e) {
    if (e.size() != 2) parse_fail(e, "expected (clause FORMULA)");
    const std::size_t index = sys_.clauses.size();
    Clause c;
    const SExpr* f = &e[1];
    if (f->head() == "forall") {
      if (f->size() != 3 || !(*f)[1].is_list()) parse_fail(*f, "expected (forall ((v SORT) ...) BODY)");
      for (const auto& b : (*f)[1].items) {
        if (!b.is_list() || b.size() != 2 || !b[0].is_atom()) parse_fail(b, "expected (name SORT)");
        c.vars.emplace_back(b[0].text, parse_sort(b[1]));
      }
      f = &(*f)[2];
    }
    env_ = c.var_env();
    try {
      if (f->head() == "=>") {
        if (f->size() != 3) parse_fail(*f, "expected (=> BODY HEAD)");
        body(e, (*f)[1], c);
        head((*f)[2], c);
      } else {
        head(*f, c);
      }
    } catch (const SortError& err) {
      throw SortError("clause " + std::to_string(index) + ": " + err.what());
    }
    sys_.clauses.push_back(std::move(c));
  }

  bool is_app(const SExpr& e) const {
    return e.is_list() && !e.items.empty() && e[0].is_atom() && sys_.find(e[0].text) != nullptr;
  }

  Application app(const SExpr& e) {
    Application a{e[0].text, {}};
    for (std::size_t i = 1; i < e.size(); ++i) a.args.push_back(parse_term(e[i], env_));
    return a;
  }

  void body(const SExpr&, const SExpr& b, Clause& c) {
    std::vector<const SExpr*> conj;
    if (b.head() == "and") {
      for (std::size_t i = 1; i < b.size(); ++i) conj.push_back(&b[i]);
    } else {
      conj.push_back(&b);
    }
    std::vector<Term> constraints;
    for (const SExpr* x : conj) {
      if (is_app(*x))
        c.body.push_back(app(*x));
      else
        constraints.push_back(parse_term(*x, env_));
    }
    c.constraint = mk_and(std::move(constraints));
  }

  void head(const SExpr& h, Clause& c) {
    if (h.is_symbol("false")) return;
    if (!is_app(h)) parse_fail(h, "clause head must be a predicate application or false");
    c.head = app(h);
  }

  ChcSystem sys_;
  SortEnv env_;
};

}  // namespace

ChcSystem load_chc(std::string_view text) { return Loader().load(text); }

std::string save_chc(const ChcSystem& sys) {
  std::ostringstream os;
  for (const auto& p : sys.predicates) {
    os << "(declare-pred " << p.name << " (";
    for (std::size_t i = 0; i < p.params.size(); ++i) {
      if (i) os << ' ';
      os << '(' << p.params[i].first << ' ' << p.params[i].second.to_string() << ')';
    }
    os << "))\n";
  }
  for (const auto& c : sys.clauses) os << clause_to_string(c) << "\n";
  return os.str();
}

ChcSystem load_chc_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_chc(ss.str());
}

}  // namespace qice
