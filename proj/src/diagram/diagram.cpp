#include "qice/diagram/diagram.hpp"

#include <algorithm>
#include <set>

#include "qice/logic/errors.hpp"

namespace qice {

int PredScheme::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name == name) return static_cast<int>(i);
  return -1;
}

SortEnv PredScheme::sort_env() const {
  SortEnv env;
  for (const auto& v : vars) env[v.name] = v.sort;
  return env;
}

QuantifierScheme QuantifierScheme::build(const ChcSystem& sys, int n) {
  if (n < 1) throw Error("quantifier count must be positive");
  QuantifierScheme qs;
  qs.n = n;
  const auto classes = infer_classes(sys);
  for (const auto& sig : sys.predicates) {
    PredScheme ps;
    ps.pred = sig.name;
    std::set<std::string> used;
    for (const auto& [name, _] : sig.params) used.insert(name);
    for (std::size_t i = 0; i < sig.arity(); ++i) {
      const auto& [name, sort] = sig.params[i];
      if (sort.is_array()) {
        ps.arrays.push_back(name);
        ps.array_params.push_back(static_cast<int>(i));
      } else {
        ps.vars.push_back({name, sort, DiagramRole::Scalar, -1, static_cast<int>(i), classes.at(sig.name)[i]});
      }
    }
    const int na = static_cast<int>(ps.arrays.size());
    ps.quantifiers.resize(na);
    ps.values.resize(na);
    int counter = 0;
    for (int a = 0; a < na; ++a)
      for (int j = 0; j < n; ++j) {
        ps.quantifiers[a].push_back(static_cast<int>(ps.vars.size()));
        ps.vars.push_back({fresh_name("k" + std::to_string(++counter), used), Sort::integer(), DiagramRole::Quantifier, a, -1,
                           IntClass::Index});
      }
    for (int a = 0; a < na; ++a) {
      const Sort el = sig.params[ps.array_params[a]].second.element();
      for (int j = 0; j < n; ++j) {
        const int q = ps.quantifiers[a][j];
        ps.values[a].push_back(static_cast<int>(ps.vars.size()));
        ps.vars.push_back({fresh_name(ps.arrays[a] + "_" + ps.vars[q].name, used), el, DiagramRole::Value, a, q,
                           el.is_int() ? IntClass::Value : IntClass::Any});
      }
    }
    for (int a = 0; a < na; ++a) {
      ps.lengths.push_back(static_cast<int>(ps.vars.size()));
      ps.vars.push_back({fresh_name("l_" + ps.arrays[a], used), Sort::integer(), DiagramRole::Length, a, -1,
                         IntClass::Index});
    }
    qs.preds[sig.name] = std::move(ps);
  }
  return qs;
}

const PredScheme& QuantifierScheme::at(const std::string& pred) const {
  auto it = preds.find(pred);
  if (it == preds.end()) throw Error("no quantifier scheme for predicate " + pred);
  return it->second;
}

Valuation Diagram::valuation(const PredScheme& ps) const {
  Valuation env;
  for (std::size_t i = 0; i < ps.vars.size(); ++i)
    env[ps.vars[i].name] = ps.vars[i].sort.is_bool() ? Value::of_bool(values[i] != 0) : Value::of_int(values[i]);
  return env;
}

std::string Diagram::to_string(const PredScheme& ps) const {
  std::string out = "<" + pred;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += ", " + ps.vars[i].name + "=";
    out += ps.vars[i].sort.is_bool() ? (values[i] != 0 ? "true" : "false") : values[i].str();
  }
  return out + ">";
}

namespace {

BigInt scalar_bits(const Value& v) { return v.sort().is_bool() ? BigInt(v.as_bool() ? 1 : 0) : v.as_int(); }

// Enumerates index tuples (one per array, n entries each) and emits diagrams.
template <class Accept>
std::vector<Diagram> enumerate(const DataPoint& x, const QuantifierScheme& scheme, bool ordered, Accept&& accept) {
  const PredScheme& ps = scheme.at(x.pred);
  const int n = scheme.n;
  const int na = static_cast<int>(ps.arrays.size());
  std::vector<const std::vector<BigInt>*> arrays;
  for (int a = 0; a < na; ++a) {
    const Value& v = x.values[ps.array_params[a]];
    if (v.size() == 0) throw Error("data point " + x.to_string() + " has an empty array " + ps.arrays[a]);
    arrays.push_back(&v.elems());
  }
  Diagram base{x.pred, std::vector<BigInt>(ps.vars.size())};
  for (std::size_t i = 0; i < ps.vars.size(); ++i) {
    const auto& dv = ps.vars[i];
    if (dv.role == DiagramRole::Scalar) base.values[i] = scalar_bits(x.values[dv.source]);
    if (dv.role == DiagramRole::Length) base.values[i] = BigInt(arrays[dv.array]->size());
  }
  // flat index vector: array a occupies [a*n, a*n+n)
  std::vector<std::size_t> idx(static_cast<std::size_t>(na * n), 0);
  std::vector<Diagram> out;
  auto valid = [&]() {
    if (!ordered) return true;
    for (int a = 0; a < na; ++a)
      for (int j = 1; j < n; ++j)
        if (idx[a * n + j - 1] > idx[a * n + j]) return false;
    return true;
  };
  while (true) {
    if (valid() && accept(idx, arrays)) {
      Diagram d = base;
      for (int a = 0; a < na; ++a)
        for (int j = 0; j < n; ++j) {
          const std::size_t k = idx[a * n + j];
          d.values[ps.quantifiers[a][j]] = BigInt(k);
          d.values[ps.values[a][j]] = (*arrays[a])[k];
        }
      out.push_back(std::move(d));
    }
    std::size_t p = 0;
    for (; p < idx.size(); ++p) {
      const std::size_t len = arrays[p / n]->size();
      if (++idx[p] < len) break;
      idx[p] = 0;
    }
    if (p == idx.size()) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::vector<Diagram> diagrams_of(const DataPoint& x, const QuantifierScheme& scheme, bool ordered) {
  return enumerate(x, scheme, ordered, [](const auto&, const auto&) { return true; });
}

std::vector<Diagram> complete_diagrams(const DataPoint& x, const QuantifierScheme& scheme, bool ordered) {
  const PredScheme& ps = scheme.at(x.pred);
  for (std::size_t a = 0; a < ps.arrays.size(); ++a)
    if (x.values[ps.array_params[a]].size() > static_cast<std::size_t>(scheme.n))
      throw Error("array " + ps.arrays[a] + " of " + x.to_string() + " is longer than the quantifier count " +
                  std::to_string(scheme.n));
  const int n = scheme.n;
  return enumerate(x, scheme, ordered, [n](const std::vector<std::size_t>& idx, const auto& arrays) {
    for (std::size_t a = 0; a < arrays.size(); ++a) {
      std::vector<char> hit(arrays[a]->size(), 0);
      for (int j = 0; j < n; ++j) hit[idx[a * n + j]] = 1;
      if (std::find(hit.begin(), hit.end(), 0) != hit.end()) return false;
    }
    return true;
  });
}

int DiagramSample::id_of(const Diagram& d) const {
  auto it = std::lower_bound(diagrams.begin(), diagrams.end(), d);
  if (it == diagrams.end() || !(*it == d)) return -1;
  return static_cast<int>(it - diagrams.begin());
}

DiagramSample diagramize(const Sample& s, const QuantifierScheme& scheme, bool ordered) {
  DiagramSample ds;
  std::vector<std::vector<Diagram>> per_point;
  for (const auto& x : s.points()) {
    per_point.push_back(diagrams_of(x, scheme, ordered));
    ds.diagrams.insert(ds.diagrams.end(), per_point.back().begin(), per_point.back().end());
  }
  std::sort(ds.diagrams.begin(), ds.diagrams.end());
  ds.diagrams.erase(std::unique(ds.diagrams.begin(), ds.diagrams.end()), ds.diagrams.end());
  for (const auto& ds_x : per_point) {
    std::vector<int> ids;
    for (const auto& d : ds_x) ids.push_back(ds.id_of(d));
    ds.of_point.push_back(std::move(ids));
  }
  std::set<HornConstraint, decltype([](const HornConstraint& a, const HornConstraint& b) {
             return std::tie(a.body, a.head) < std::tie(b.body, b.head);
           })>
      seen;
  auto emit = [&](HornConstraint c) {
    if (seen.insert(c).second) ds.constraints.push_back(std::move(c));
  };
  for (const auto& c : s.constraints()) {
    std::vector<int> body;
    for (int p : c.body) body.insert(body.end(), ds.of_point[p].begin(), ds.of_point[p].end());
    std::sort(body.begin(), body.end());
    body.erase(std::unique(body.begin(), body.end()), body.end());
    if (c.head == HornConstraint::kBottom) {
      emit({body, HornConstraint::kBottom});
    } else {
      for (int d : ds.of_point[c.head]) emit({body, d});
    }
  }
  return ds;
}

Solution lift(const std::map<std::string, Term>& jprime, const QuantifierScheme& scheme, bool ordered) {
  Solution out;
  for (const auto& [pred, ps] : scheme.preds) {
    auto it = jprime.find(pred);
    Term f = it == jprime.end() ? mk_true() : it->second;
    SortEnv allowed = ps.sort_env();
    for (const auto& [name, sort] : free_vars(f)) {
      auto a = allowed.find(name);
      if (a == allowed.end() || a->second != sort)
        throw Error("formula for " + pred + " uses " + name + ", which is not a diagram variable");
    }
    QuantifiedProperty p;
    Substitution sub;
    std::vector<Term> guard;
    for (std::size_t a = 0; a < ps.arrays.size(); ++a) {
      const DiagramVar& len = ps.vars[ps.lengths[a]];
      // the array parameter keeps its sort from the signature
      const Sort el = ps.vars[ps.values[a][0]].sort;
      Term arr = mk_var(ps.arrays[a], Sort::array(el));
      QuantBlock blk{arr, {}};
      for (std::size_t j = 0; j < ps.quantifiers[a].size(); ++j) {
        const DiagramVar& k = ps.vars[ps.quantifiers[a][j]];
        const DiagramVar& v = ps.vars[ps.values[a][j]];
        blk.vars.push_back(k.name);
        sub[v.name] = mk_read(arr, mk_var(k.name, Sort::integer()));
        if (ordered && j > 0)
          guard.push_back(mk_leq(mk_var(ps.vars[ps.quantifiers[a][j - 1]].name, Sort::integer()),
                                 mk_var(k.name, Sort::integer())));
      }
      sub[len.name] = mk_len(arr);
      p.blocks.push_back(std::move(blk));
    }
    p.guard = mk_and(std::move(guard));
    if (p.blocks.empty())
      p.psi = f;
    else
      p.matrix = substitute(f, sub);
    out[pred] = std::move(p);
  }
  return out;
}

}  // namespace qice
