#include "qice/learner/tree.hpp"

#include <cmath>
#include <optional>
#include <set>

#include "qice/logic/errors.hpp"

namespace qice {

DecisionTree DecisionTree::make_leaf(bool label) {
  DecisionTree t;
  t.label = label;
  return t;
}

DecisionTree DecisionTree::make_node(Attribute attr, DecisionTree then_branch, DecisionTree else_branch) {
  DecisionTree t;
  t.leaf = false;
  t.attr = std::move(attr);
  t.then_branch = std::make_shared<const DecisionTree>(std::move(then_branch));
  t.else_branch = std::make_shared<const DecisionTree>(std::move(else_branch));
  return t;
}

bool DecisionTree::classify(const Diagram& d) const {
  const DecisionTree* t = this;
  while (!t->leaf) t = t->attr.eval(d) ? t->then_branch.get() : t->else_branch.get();
  return t->label;
}

std::size_t DecisionTree::size() const { return leaf ? 1 : 1 + then_branch->size() + else_branch->size(); }

std::size_t DecisionTree::depth() const {
  return leaf ? 0 : 1 + std::max(then_branch->depth(), else_branch->depth());
}

namespace {

void paths(const DecisionTree& t, bool want, std::vector<Term>& path, std::vector<std::vector<Term>>& out) {
  if (t.leaf) {
    if (t.label == want) out.push_back(path);
    return;
  }
  path.push_back(t.attr.atom);
  paths(*t.then_branch, want, path, out);
  path.back() = mk_not(t.attr.atom);
  paths(*t.else_branch, want, path, out);
  path.pop_back();
}

}  // namespace

Term tree_to_formula(const DecisionTree& t) {
  std::vector<Term> path;
  std::vector<std::vector<Term>> found;
  paths(t, true, path, found);
  std::vector<Term> disj;
  for (auto& p : found) disj.push_back(mk_and(std::move(p)));
  return mk_or(std::move(disj));
}

Term tree_to_cnf(const DecisionTree& t) {
  std::vector<Term> path;
  std::vector<std::vector<Term>> found;
  paths(t, false, path, found);
  std::vector<Term> conj;
  for (auto& p : found) {
    std::vector<Term> clause;
    for (const auto& lit : p) clause.push_back(lit.is(Op::Not) ? lit.arg(0) : mk_not(lit));
    conj.push_back(mk_or(std::move(clause)));
  }
  return mk_and(std::move(conj));
}

Quotient quotient(const DiagramSample& ds, const AttributePool& pool) {
  Quotient q;
  std::map<std::pair<std::string, std::vector<char>>, int> ids;
  for (const auto& d : ds.diagrams) {
    const auto& attrs = pool.of(d.pred);
    std::vector<char> bits(attrs.size());
    for (std::size_t i = 0; i < attrs.size(); ++i) bits[i] = attrs[i].eval(d);
    auto [it, fresh] = ids.emplace(std::make_pair(d.pred, std::move(bits)), static_cast<int>(q.members.size()));
    if (fresh) {
      q.members.emplace_back();
      q.class_pred.push_back(d.pred);
    }
    q.members[it->second].push_back(static_cast<int>(q.class_of.size()));
    q.class_of.push_back(it->second);
  }
  for (const auto& c : ds.constraints) {
    HornConstraint qc;
    for (int b : c.body) qc.body.push_back(q.class_of[b]);
    std::sort(qc.body.begin(), qc.body.end());
    qc.body.erase(std::unique(qc.body.begin(), qc.body.end()), qc.body.end());
    qc.head = c.head == HornConstraint::kBottom ? HornConstraint::kBottom : q.class_of[c.head];
    q.constraints.push_back(std::move(qc));
  }
  return q;
}

bool sufficient(const AttributePool& pool, const DiagramSample& ds) {
  Quotient q = quotient(ds, pool);
  return horn_closure(q.members.size(), q.constraints).consistent;
}

namespace {

double entropy(double p, double n) {
  const double t = p + n;
  if (p == 0 || n == 0) return 0;
  return -(p / t) * std::log2(p / t) - (n / t) * std::log2(n / t);
}

class Builder {
 public:
  Builder(const DiagramSample& ds, const AttributePool& pool, TreeStats* stats)
      : ds_(ds), pool_(pool), q_(quotient(ds, pool)), facts_(q_.constraints), stats_(stats) {
    label_.assign(q_.members.size(), -1);
    if (stats_) stats_->classes = q_.members.size();
  }

  DecisionTree build(const std::string& pred) {
    std::vector<int> classes;
    for (std::size_t c = 0; c < q_.members.size(); ++c)
      if (q_.class_pred[c] == pred) classes.push_back(static_cast<int>(c));
    const auto& attrs = pool_.of(pred);
    std::vector<char> used(attrs.size(), 0);
    Path path;
    if (!attrs.empty()) {
      const auto& ps = scheme_of(attrs.front());
      for (const auto& a : attrs) path.scopes.push_back(scope(ps, a));
    }
    return node(classes, attrs, used, path);
  }

  void verify() const {
    std::vector<char> per_diagram(ds_.diagrams.size());
    for (std::size_t d = 0; d < per_diagram.size(); ++d) {
      const int l = label_[q_.class_of[d]];
      per_diagram[d] = l != 0;  // classes of predicates without a tree stay true
    }
    if (!labeling_satisfies(per_diagram, ds_.constraints))
      throw Error("internal error: decision trees induce an inconsistent labeling");
  }

 private:
  bool attr_value(int cls, const Attribute& a) const { return a.eval(ds_.diagrams[q_.members[cls].front()]); }

  // Scalars an attribute puts in index position (next to a quantifier
  // variable) or value position (next to a value variable).
  struct Scope {
    std::vector<int> index, value;
  };
  struct Path {
    std::vector<Scope> scopes;  // per attribute
    std::multiset<int> index, value;
  };

  const PredScheme& scheme_of(const Attribute& a) const { return pool_.schemes.at(a.pred); }

  static Scope scope(const PredScheme& ps, const Attribute& a) {
    Scope s;
    bool quant = false, values = false;
    std::vector<int> scalars;
    for (const auto& [v, _] : a.coeffs) {
      const auto role = ps.vars[v].role;
      quant = quant || role == DiagramRole::Quantifier;
      values = values || role == DiagramRole::Value;
      if (role == DiagramRole::Scalar) scalars.push_back(v);
    }
    if (quant) s.index = scalars;
    if (values) s.value = scalars;
    return s;
  }

  static bool compatible(const Path& p, const Scope& s) {
    for (int v : s.index)
      if (p.value.count(v)) return false;
    for (int v : s.value)
      if (p.index.count(v)) return false;
    return true;
  }

  DecisionTree node(const std::vector<int>& classes, const std::vector<Attribute>& attrs, std::vector<char>& used,
                    Path& path) {
    if (stats_) ++stats_->nodes;
    HornClosure cl = horn_closure(q_.members.size(), facts_);
    bool has_pos = false, has_neg = false;
    for (int c : classes) {
      has_pos = has_pos || cl.pos[c];
      has_neg = has_neg || cl.neg[c];
    }
    if (!(has_pos && has_neg)) {
      if (has_neg) {
        // keep unforced classes out of a negative leaf when a split allows it
        bool unforced = false;
        for (int c : classes) unforced = unforced || !cl.neg[c];
        if (unforced) {
          const int pick = choose_positive(classes, attrs, used, cl, path);
          if (pick >= 0) return split(classes, attrs, used, path, pick);
        }
        return commit(classes, cl, false);
      }
      // positive by default, if consistent
      std::vector<HornConstraint> trial = facts_;
      for (int c : classes)
        if (!cl.pos[c]) trial.push_back({{}, c});
      if (horn_closure(q_.members.size(), trial).consistent) {
        facts_ = std::move(trial);
        return commit(classes, cl, true);
      }
      // split so that one side can still be positive
      int pick = choose_positive(classes, attrs, used, cl, path);
      if (pick >= 0) return split(classes, attrs, used, path, pick);
      if (!has_pos) {
        if (stats_) ++stats_->positive_fallbacks;
        return commit(classes, cl, false);
      }
    }
    int best = choose(classes, attrs, used, cl, &path);
    if (best < 0) {
      best = choose(classes, attrs, used, cl, nullptr);
      if (stats_ && best >= 0) ++stats_->fragment_fallbacks;
    }
    if (best < 0) throw Error("internal error: no attribute separates the classes of " + q_.class_pred[classes[0]]);
    return split(classes, attrs, used, path, best);
  }

  DecisionTree split(const std::vector<int>& classes, const std::vector<Attribute>& attrs, std::vector<char>& used,
                     Path& path, int best) {
    std::vector<int> yes, no;
    for (int c : classes) (attr_value(c, attrs[best]) ? yes : no).push_back(c);
    used[best] = 1;
    const Scope& sc = path.scopes[best];
    path.index.insert(sc.index.begin(), sc.index.end());
    path.value.insert(sc.value.begin(), sc.value.end());
    // k <= k' may only appear as a premise: its else side becomes a true leaf
    std::optional<DecisionTree> e;
    if (guard(attrs[best])) {
      if (auto trial = positive_trial(no, horn_closure(q_.members.size(), facts_))) {
        facts_ = std::move(*trial);
        for (int c : no) label_[c] = 1;
        e = DecisionTree::make_leaf(true);
      } else if (stats_) {
        ++stats_->fragment_fallbacks;
      }
    }
    DecisionTree t = node(yes, attrs, used, path);
    if (!e) e = node(no, attrs, used, path);
    for (int v : sc.index) path.index.erase(path.index.find(v));
    for (int v : sc.value) path.value.erase(path.value.find(v));
    used[best] = 0;
    return DecisionTree::make_node(attrs[best], std::move(t), std::move(*e));
  }

  // Compares two quantifier variables.
  bool guard(const Attribute& a) const {
    const auto& ps = scheme_of(a);
    int quant = 0;
    for (const auto& [v, _] : a.coeffs) quant += ps.vars[v].role == DiagramRole::Quantifier;
    return quant >= 2;
  }

  // facts_ with every class of `side` positive, if that stays consistent.
  std::optional<std::vector<HornConstraint>> positive_trial(const std::vector<int>& side,
                                                            const HornClosure& cl) const {
    for (int c : side)
      if (cl.neg[c]) return std::nullopt;
    std::vector<HornConstraint> trial = facts_;
    for (int c : side)
      if (!cl.pos[c]) trial.push_back({{}, c});
    if (!horn_closure(q_.members.size(), trial).consistent) return std::nullopt;
    return trial;
  }

  DecisionTree commit(const std::vector<int>& classes, const HornClosure& cl, bool label) {
    for (int c : classes) {
      label_[c] = label ? 1 : 0;
      if (!label && !cl.neg[c]) facts_.push_back({{c}, HornConstraint::kBottom});
    }
    return DecisionTree::make_leaf(label);
  }

  // Among compatible splitting attributes, the one whose heavier side can be
  // labeled positive as a whole (first in pool order on ties); -1 if none.
  int choose_positive(const std::vector<int>& classes, const std::vector<Attribute>& attrs,
                      const std::vector<char>& used, const HornClosure& cl, const Path& path) const {
    int best = -1;
    std::size_t best_weight = 0;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      if (used[i] || !compatible(path, path.scopes[i])) continue;
      std::vector<int> side[2];
      std::size_t weight[2] = {0, 0};
      for (int c : classes) {
        const int v = attr_value(c, attrs[i]);
        side[v].push_back(c);
        weight[v] += q_.members[c].size();
      }
      if (side[0].empty() || side[1].empty()) continue;
      if (guard(attrs[i]) && !positive_trial(side[0], cl)) continue;
      for (int v : {1, 0}) {
        if (weight[v] <= best_weight) continue;
        bool blocked = false;
        for (int c : side[v]) blocked = blocked || cl.neg[c];
        if (blocked) continue;
        std::vector<HornConstraint> trial = facts_;
        for (int c : side[v])
          if (!cl.pos[c]) trial.push_back({{}, c});
        if (horn_closure(q_.members.size(), trial).consistent) {
          best = static_cast<int>(i);
          best_weight = weight[v];
        }
      }
    }
    return best;
  }

  // Highest information gain over the forced classes, less a penalty for
  // implications the split cuts from a likely positive side into a likely
  // negative one; ties go to the earlier attribute. Only attributes that split
  // the classes are candidates, and with a path a k <= k' attribute only if its
  // else side can be positive.
  int choose(const std::vector<int>& classes, const std::vector<Attribute>& attrs, const std::vector<char>& used,
             const HornClosure& cl, const Path* path) const {
    double pos = 0, neg = 0;
    std::vector<char> here(q_.members.size(), 0);
    for (int c : classes) {
      const double w = static_cast<double>(q_.members[c].size());
      if (cl.pos[c]) pos += w;
      if (cl.neg[c]) neg += w;
      here[c] = 1;
    }
    std::vector<const HornConstraint*> edges;
    for (const auto& hc : q_.constraints) {
      if (hc.head == HornConstraint::kBottom || !here[hc.head]) continue;
      for (int b : hc.body)
        if (b != hc.head && here[b]) {
          edges.push_back(&hc);
          break;
        }
    }
    const double base = entropy(pos, neg);
    int best = -1;
    double best_gain = -1;
    for (std::size_t i = 0; i < attrs.size(); ++i) {
      if (used[i] || (path && !compatible(*path, path->scopes[i]))) continue;
      double yp = 0, yn = 0, np = 0, nn = 0;
      std::size_t ycount = 0;
      for (int c : classes) {
        const double w = static_cast<double>(q_.members[c].size());
        const bool v = attr_value(c, attrs[i]);
        ycount += v;
        if (cl.pos[c]) (v ? yp : np) += w;
        if (cl.neg[c]) (v ? yn : nn) += w;
      }
      if (ycount == 0 || ycount == classes.size()) continue;
      if (path && guard(attrs[i])) {
        std::vector<int> no;
        for (int c : classes)
          if (!attr_value(c, attrs[i])) no.push_back(c);
        if (!positive_trial(no, cl)) continue;
      }
      const double total = pos + neg;
      double gain = 0;
      if (total > 0) gain = base - ((yp + yn) / total) * entropy(yp, yn) - ((np + nn) / total) * entropy(np, nn);
      if (!edges.empty()) {
        auto positive = [](double p, double n) { return (p + 1) / (p + n + 2); };
        const double py = positive(yp, yn), pn = positive(np, nn);
        double harm = 0;
        for (const HornConstraint* hc : edges) {
          const bool hv = attr_value(hc->head, attrs[i]);
          bool cut = false;
          for (int b : hc->body) cut = cut || (here[b] && attr_value(b, attrs[i]) != hv);
          if (cut) harm += hv ? pn * (1 - py) : py * (1 - pn);
        }
        gain -= harm / static_cast<double>(edges.size());
      }
      if (gain > best_gain + 1e-12) {
        best_gain = gain;
        best = static_cast<int>(i);
      }
    }
    return best;
  }

  const DiagramSample& ds_;
  const AttributePool& pool_;
  Quotient q_;
  std::vector<HornConstraint> facts_;
  std::vector<int> label_;
  TreeStats* stats_;
};

}  // namespace

std::map<std::string, DecisionTree> learn_tree(const DiagramSample& ds, const AttributePool& pool, TreeStats* stats) {
  Builder b(ds, pool, stats);
  std::map<std::string, DecisionTree> out;
  for (const auto& [pred, _] : pool.attrs) out.emplace(pred, b.build(pred));
  b.verify();
  return out;
}

}  // namespace qice
