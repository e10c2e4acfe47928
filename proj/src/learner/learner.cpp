#include "qice/learner/learner.hpp"

#include "qice/logic/errors.hpp"

namespace qice {

Solution learn(const ChcSystem& sys, const Sample& s, LearnerState& state, const LearnerConfig& cfg) {
  if (!s.is_consistent()) throw Error("learner called on an inconsistent sample:\n" + s.explain_inconsistency());
  auto trace = [&](const std::string& line) {
    if (cfg.trace) cfg.trace(line);
  };
  QuantifierScheme scheme = QuantifierScheme::build(sys, state.n);
  DiagramSample ds = diagramize(s, scheme, cfg.ordered);
  while (!ds.is_consistent()) {
    if (state.n >= cfg.max_n)
      throw BudgetError("diagram sample inconsistent with " + std::to_string(state.n) +
                        " quantifier variables per array (limit " + std::to_string(cfg.max_n) + ")");
    ++state.n;
    trace("learn n=" + std::to_string(state.n) + " (diagram sample inconsistent)");
    scheme = QuantifierScheme::build(sys, state.n);
    ds = diagramize(s, scheme, cfg.ordered);
  }
  AttributePool pool = make_pool(scheme, state.k, cfg.patterns, cfg.ordered);
  while (!sufficient(pool, ds)) {
    if (pool.k >= cfg.max_k)
      throw BudgetError("attributes with constants up to " + std::to_string(pool.k) + " cannot separate the sample");
    pool = generate_attributes(pool, scheme);
    trace("learn k=" + std::to_string(pool.k) + " attributes=" + std::to_string(pool.size()));
  }
  state.k = pool.k;
  TreeStats stats;
  state.trees = learn_tree(ds, pool, &stats);
  state.jprime.clear();
  for (const auto& [pred, tree] : state.trees) state.jprime[pred] = tree_to_cnf(tree);
  trace("learn trees n=" + std::to_string(state.n) + " k=" + std::to_string(state.k) +
        " diagrams=" + std::to_string(ds.diagrams.size()) + " classes=" + std::to_string(stats.classes) +
        " nodes=" + std::to_string(stats.nodes) + " fragment_fallbacks=" + std::to_string(stats.fragment_fallbacks));
  return lift(state.jprime, scheme, cfg.ordered);
}

}  // namespace qice
