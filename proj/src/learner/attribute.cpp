#include "qice/learner/attribute.hpp"

#include <algorithm>
#include <set>

#include "qice/logic/errors.hpp"
#include "qice/logic/linear.hpp"

namespace qice {

bool Attribute::eval(const Diagram& d) const {
  if (rel == Rel::Bool) return d.values[var] != 0;
  BigInt sum = 0;
  for (const auto& [v, c] : coeffs) sum += c * d.values[v];
  return rel == Rel::Leq ? sum <= bound : sum == bound;
}

std::string Attribute::key() const {
  if (rel == Rel::Bool) return "b" + std::to_string(var);
  auto cs = coeffs;
  BigInt b = bound;
  if (rel == Rel::Eq && !cs.empty() && cs.front().second < 0) {
    for (auto& [_, c] : cs) c = -c;
    b = -b;
  }
  std::string out = rel == Rel::Leq ? "l" : "e";
  for (const auto& [v, c] : cs) out += " " + std::to_string(v) + ":" + c.str();
  return out + " " + b.str();
}

std::size_t AttributePool::size() const {
  std::size_t n = 0;
  for (const auto& [_, v] : attrs) n += v.size();
  return n;
}

const std::vector<Attribute>& AttributePool::of(const std::string& pred) const {
  static const std::vector<Attribute> none;
  auto it = attrs.find(pred);
  return it == attrs.end() ? none : it->second;
}

bool admissible(const PredScheme& ps, const std::vector<std::pair<int, BigInt>>& coeffs, Attribute::Rel rel,
                const BigInt& bound, bool ordered) {
  std::vector<std::pair<int, BigInt>> quant;
  bool values = false;
  bool index_class = false, value_class = false;
  for (const auto& [v, c] : coeffs) {
    index_class |= ps.vars[v].cls == IntClass::Index;
    value_class |= ps.vars[v].cls == IntClass::Value;
    if (ps.vars[v].role == DiagramRole::Quantifier) quant.emplace_back(v, c);
    if (ps.vars[v].role == DiagramRole::Value) values = true;
  }
  if (index_class && value_class) return false;
  if (quant.empty()) return true;
  if (values) return false;
  if (quant.size() == 1) return abs(quant[0].second) == 1;
  if (quant.size() != 2 || coeffs.size() != 2 || rel != Attribute::Rel::Leq || bound != 0) return false;
  if (quant[0].second + quant[1].second != 0 || abs(quant[0].second) != 1) return false;
  return !(ordered && ps.vars[quant[0].first].array == ps.vars[quant[1].first].array);
}

namespace {

Term linear_atom(const PredScheme& ps, const std::vector<std::pair<int, BigInt>>& coeffs, Attribute::Rel rel,
                 const BigInt& bound) {
  std::vector<Term> pos, neg;
  for (const auto& [v, c] : coeffs) {
    Term x = mk_var(ps.vars[v].name, ps.vars[v].sort);
    if (c > 0)
      pos.push_back(c == 1 ? x : mk_mul(c, x));
    else
      neg.push_back(c == -1 ? x : mk_mul(-c, x));
  }
  Term lhs, rhs;
  if (pos.empty()) {
    // -neg <= b  <=>  -b <= neg
    lhs = mk_int(-bound);
    rhs = mk_sum(neg);
  } else {
    lhs = mk_sum(pos);
    if (bound != 0) neg.push_back(mk_int(bound));
    rhs = neg.empty() ? mk_int(0) : mk_sum(neg);
  }
  return rel == Attribute::Rel::Leq ? mk_leq(lhs, rhs) : mk_eq(lhs, rhs);
}

class PoolBuilder {
 public:
  PoolBuilder(const PredScheme& ps, bool ordered, std::vector<Attribute>& out) : ps_(ps), ordered_(ordered), out_(out) {
    for (const auto& a : out_) seen_.insert(a.key());
  }

  void add_linear(std::vector<std::pair<int, BigInt>> coeffs, Attribute::Rel rel, BigInt bound, AttributeKind kind,
                  std::optional<BigInt> constant) {
    std::sort(coeffs.begin(), coeffs.end());
    if (!admissible(ps_, coeffs, rel, bound, ordered_)) return;
    Attribute a;
    a.pred = ps_.pred;
    a.kind = kind;
    a.constant = std::move(constant);
    a.rel = rel;
    a.coeffs = std::move(coeffs);
    a.bound = std::move(bound);
    if (!seen_.insert(a.key()).second) return;
    a.atom = linear_atom(ps_, a.coeffs, a.rel, a.bound);
    out_.push_back(std::move(a));
  }

  void add(Attribute a) {
    if (!a.coeffs.empty() && !admissible(ps_, a.coeffs, a.rel, a.bound, ordered_)) return;
    if (seen_.insert(a.key()).second) out_.push_back(std::move(a));
  }

 private:
  const PredScheme& ps_;
  bool ordered_;
  std::vector<Attribute>& out_;
  std::set<std::string> seen_;
};

// A hole is filled by diagram variables of the kind it had in the source.
bool kind_fits(HoleKind kind, DiagramRole role) {
  switch (kind) {
    case HoleKind::Any:
      return true;
    case HoleKind::Scalar:
      return role == DiagramRole::Scalar;
    case HoleKind::Quantifier:
      return role == DiagramRole::Quantifier;
    case HoleKind::Cell:
      return role == DiagramRole::Value;
    case HoleKind::Length:
      return role == DiagramRole::Length;
  }
  return true;
}

void instantiate_patterns(const PredScheme& ps, const std::vector<Pattern>& patterns, const std::vector<int>& ints,
                          PoolBuilder& b) {
  for (const auto& p : patterns) {
    if (p.arity > ints.size()) continue;
    // ordered tuples of distinct variables
    std::vector<int> pick(p.arity, 0);
    std::vector<char> used(ints.size(), 0);
    auto rec = [&](auto&& self, std::size_t depth) -> void {
      if (depth == p.arity) {
        std::vector<Term> vars;
        for (int i : pick) vars.push_back(mk_var(ps.vars[ints[i]].name, Sort::integer()));
        if (auto a = attribute_from_atom(ps, p.instantiate(vars), AttributeKind::Extracted)) b.add(std::move(*a));
        return;
      }
      const IntClass want = p.hole_class(depth);
      const HoleKind kind = p.hole_kind(depth);
      for (std::size_t i = 0; i < ints.size(); ++i) {
        if (used[i]) continue;
        const IntClass have = ps.vars[ints[i]].cls;
        if (want != IntClass::Any && have != IntClass::Any && want != have) continue;
        if (!kind_fits(kind, ps.vars[ints[i]].role)) continue;
        used[i] = 1;
        pick[depth] = static_cast<int>(i);
        self(self, depth + 1);
        used[i] = 0;
      }
    };
    rec(rec, 0);
  }
}

}  // namespace

std::optional<Attribute> attribute_from_atom(const PredScheme& ps, const Term& atom, AttributeKind kind) {
  Term a = atom;
  if (a.is(Op::Var) && a.sort().is_bool()) {
    const int v = ps.index_of(a.name());
    if (v < 0) return std::nullopt;
    Attribute out;
    out.pred = ps.pred;
    out.atom = a;
    out.kind = AttributeKind::Boolean;
    out.var = v;
    return out;
  }
  if (!(a.is(Op::Leq) || a.is(Op::Eq)) || !a.arg(0).sort().is_int()) return std::nullopt;
  LinearForm f = linearize(a.arg(0));
  f.add(linearize(a.arg(1)), -1);
  Attribute out;
  out.pred = ps.pred;
  out.atom = a;
  out.kind = kind;
  out.rel = a.is(Op::Leq) ? Attribute::Rel::Leq : Attribute::Rel::Eq;
  for (const auto& [t, c] : f.coeffs) {
    if (!t.is(Op::Var)) return std::nullopt;
    const int v = ps.index_of(t.name());
    if (v < 0 || !ps.vars[v].sort.is_int()) return std::nullopt;
    out.coeffs.emplace_back(v, c);
  }
  if (out.coeffs.empty()) return std::nullopt;
  std::sort(out.coeffs.begin(), out.coeffs.end());
  out.bound = -f.constant;
  return out;
}

AttributePool make_pool(const QuantifierScheme& scheme, int k, std::vector<Pattern> patterns, bool ordered) {
  if (k < -1) throw Error("constant bound must be at least -1");
  AttributePool pool;
  pool.k = k;
  pool.ordered = ordered;
  std::sort(patterns.begin(), patterns.end());
  patterns.erase(std::unique(patterns.begin(), patterns.end()), patterns.end());
  pool.patterns = std::move(patterns);
  for (const auto& [pred, ps] : scheme.preds) {
    pool.schemes[pred] = ps;
    auto& attrs = pool.attrs[pred];
    PoolBuilder b(ps, ordered, attrs);
    std::vector<int> ints;
    for (std::size_t i = 0; i < ps.vars.size(); ++i) {
      if (ps.vars[i].sort.is_bool()) {
        Attribute a;
        a.pred = pred;
        a.atom = mk_var(ps.vars[i].name, Sort::boolean());
        a.var = static_cast<int>(i);
        b.add(std::move(a));
      } else {
        ints.push_back(static_cast<int>(i));
      }
    }
    using Rel = Attribute::Rel;
    // constant-free comparisons first: ties in the tree go to the earlier attribute
    for (int x : ints)
      for (int y : ints)
        if (x != y) b.add_linear({{x, 1}, {y, -1}}, Rel::Leq, 0, AttributeKind::UpperBound, std::nullopt);
    instantiate_patterns(ps, pool.patterns, ints, b);
    // constants by increasing magnitude so simpler atoms come first
    for (int m = 0; m <= k; ++m)
      for (int sign : {1, -1}) {
        if (m == 0 && sign < 0) continue;
        const BigInt c = sign * m;
        for (int x : ints)
          for (int sx : {1, -1}) b.add_linear({{x, sx}}, Rel::Leq, c, AttributeKind::Interval, c);
        for (std::size_t i = 0; i < ints.size(); ++i)
          for (std::size_t j = i + 1; j < ints.size(); ++j)
            for (int sx : {1, -1})
              for (int sy : {1, -1})
                b.add_linear({{ints[i], sx}, {ints[j], sy}}, Rel::Leq, c, AttributeKind::Octagon, c);
      }
  }
  return pool;
}

AttributePool generate_attributes(const AttributePool& pool, const QuantifierScheme& scheme) {
  return make_pool(scheme, pool.k + 1, pool.patterns, pool.ordered);
}

}  // namespace qice
