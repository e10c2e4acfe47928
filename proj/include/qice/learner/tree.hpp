#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qice/learner/attribute.hpp"

namespace qice {

struct DecisionTree {
  bool leaf = true;
  bool label = true;
  Attribute attr;  // inner nodes
  std::shared_ptr<const DecisionTree> then_branch;
  std::shared_ptr<const DecisionTree> else_branch;

  static DecisionTree make_leaf(bool label);
  static DecisionTree make_node(Attribute attr, DecisionTree then_branch, DecisionTree else_branch);

  bool classify(const Diagram& d) const;
  std::size_t size() const;
  std::size_t depth() const;
};

/// Disjunction over true-leaf paths of the path literals.
Term tree_to_formula(const DecisionTree& t);
/// The same function as a conjunction over false-leaf paths of negated path
/// literals; this is the form emitted in invariants since its clauses map
/// directly onto the quantified fragment.
Term tree_to_cnf(const DecisionTree& t);

/// Diagrams of the same predicate that agree on every attribute, merged.
struct Quotient {
  std::vector<int> class_of;  // per diagram
  std::vector<std::string> class_pred;
  std::vector<std::vector<int>> members;
  std::vector<HornConstraint> constraints;
};

Quotient quotient(const DiagramSample& ds, const AttributePool& pool);

/// Is the quotient of the diagram sample under the pool still consistent?
bool sufficient(const AttributePool& pool, const DiagramSample& ds);

struct TreeStats {
  std::size_t classes = 0;
  std::size_t nodes = 0;
  std::size_t positive_fallbacks = 0;  // unforced leaves that could not be positive
  /// Splits that had to mix a scalar into both index and value literals of
  /// one path (the lifted clause then leaves the decidable fragment).
  std::size_t fragment_fallbacks = 0;
};

/// One tree per predicate of the pool whose induced labeling is consistent
/// with the diagram sample. Requires sufficient(pool, ds); throws Error if
/// the labeling would be inconsistent.
std::map<std::string, DecisionTree> learn_tree(const DiagramSample& ds, const AttributePool& pool,
                                               TreeStats* stats = nullptr);

}  // namespace qice
